#pragma once

// Normal ordering by term rewriting, vacuum expectation values, the linear
// action of expressions on state vectors and the dense equivalence check.
//
// Rewrite rules for an adjacent pair (x, y) that is out of canonical order:
//   same sector:      x y -> -y x, plus the contraction 1 when x = b-_r, y = b+_r
//   different sector: x y -> +y x
// Adjacent identical generators annihilate the term. Canonical order puts
// creators first, ascending by (sector, serial), then annihilators descending,
// so the adjoint of a canonical term is again canonical.

#include <complex>
#include <cstddef>
#include <deque>
#include <map>
#include <vector>

#include <Eigen/Sparse>

#include "fermifold/dense.hpp"
#include "fermifold/errors.hpp"
#include "fermifold/expr.hpp"

namespace fermifold {

inline constexpr std::size_t kDefaultRewriteLimit = 10000;

/// Strict canonical order between two generators.
inline bool canonical_before(const Generator& a, const Generator& b) {
  if (a.kind != b.kind) return a.kind == Action::create;
  if (a.kind == Action::create) return a.mode < b.mode;
  return b.mode < a.mode;
}

struct CanonicalLess {
  bool operator()(const std::vector<Generator>& a, const std::vector<Generator>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (canonical_before(a[i], b[i])) return true;
      if (canonical_before(b[i], a[i])) return false;
    }
    return false;
  }
};

inline bool is_canonical(const std::vector<Generator>& gens) {
  for (std::size_t i = 0; i + 1 < gens.size(); ++i) {
    if (!canonical_before(gens[i], gens[i + 1])) return false;
  }
  return true;
}

template <typename S>
struct NormalForm {
  BasicOperatorExpr<S> expr;
  std::size_t steps = 0;  // rewrites applied

  friend bool operator==(const NormalForm& a, const NormalForm& b) { return a.expr == b.expr; }
};

template <typename S>
NormalForm<S> normal_order(const BasicOperatorExpr<S>& e, std::size_t max_steps = kDefaultRewriteLimit) {
  std::map<std::vector<Generator>, S, CanonicalLess> collected;
  std::deque<Term<S>> work(e.terms().begin(), e.terms().end());
  std::size_t steps = 0;

  while (!work.empty()) {
    Term<S> t = std::move(work.front());
    work.pop_front();

    std::size_t pos = t.gens.size();
    bool vanishes = false;
    for (std::size_t i = 0; i + 1 < t.gens.size(); ++i) {
      if (t.gens[i] == t.gens[i + 1]) {
        vanishes = true;
        break;
      }
      if (canonical_before(t.gens[i + 1], t.gens[i])) {
        pos = i;
        break;
      }
    }
    if (vanishes) continue;
    if (pos == t.gens.size()) {
      auto [it, inserted] = collected.try_emplace(t.gens, t.scalar);
      if (!inserted) it->second = it->second + t.scalar;
      continue;
    }

    if (++steps > max_steps) {
      throw RewriteLimitError("normal ordering exceeded " + std::to_string(max_steps) + " rewrites");
    }
    const Generator x = t.gens[pos];
    const Generator y = t.gens[pos + 1];
    const bool same_sector = x.mode.sector == y.mode.sector;

    if (same_sector && x.mode == y.mode && x.kind == Action::annihilate && y.kind == Action::create) {
      Term<S> contracted{t.scalar, {}};
      contracted.gens.reserve(t.gens.size() - 2);
      contracted.gens.insert(contracted.gens.end(), t.gens.begin(), t.gens.begin() + static_cast<std::ptrdiff_t>(pos));
      contracted.gens.insert(contracted.gens.end(), t.gens.begin() + static_cast<std::ptrdiff_t>(pos + 2), t.gens.end());
      work.push_back(std::move(contracted));
    }
    std::swap(t.gens[pos], t.gens[pos + 1]);
    if (same_sector) t.scalar = -t.scalar;
    work.push_back(std::move(t));
  }

  NormalForm<S> out;
  out.steps = steps;
  for (auto& [gens, scalar] : collected) out.expr.add(Term<S>{scalar, gens});
  return out;
}

/// <chi0(base)| e |chi0(base)>: the scalar part of the normal form. Base flags
/// select the reference ket and do not change the value.
template <typename S>
std::complex<double> vev(const BasicOperatorExpr<S>& e, std::array<std::uint8_t, 4> base = {}) {
  for (auto f : base) {
    if (f > 1) throw RangeError("base-ket flag must be 0 or 1");
  }
  const auto nf = normal_order(e);
  for (const auto& t : nf.expr.terms()) {
    if (t.gens.empty()) return to_complex(t.scalar);
  }
  return {};
}

/// Linear action; each term's generators act right to left.
template <typename S>
StateVector apply(const BasicOperatorExpr<S>& e, const StateVector& v) {
  validate(e, v.config());
  StateVector out(v.config());
  for (const auto& t : e.terms()) {
    const auto c = to_complex(t.scalar);
    for (const auto& [state, amp] : v.terms()) {
      if (auto r = apply_string(t.gens, state)) out.add(r->state, c * amp * static_cast<double>(r->phase));
    }
  }
  return out;
}

using ComplexMatrix = Eigen::SparseMatrix<std::complex<double>, Eigen::ColMajor, std::ptrdiff_t>;

/// Dense-oracle matrix of an expression: products and sums of dense_matrix() generators.
template <typename S>
ComplexMatrix expression_matrix(const BasicOperatorExpr<S>& e, const SectorConfig& cfg,
                                int ceiling = kDefaultOracleCeiling) {
  check_ceiling(cfg, ceiling);
  validate(e, cfg);
  const auto n = static_cast<std::ptrdiff_t>(basis_size(cfg));
  ComplexMatrix total(n, n);
  std::map<Generator, ComplexMatrix> cache;
  for (const auto& t : e.terms()) {
    ComplexMatrix prod(n, n);
    prod.setIdentity();
    for (const auto& g : t.gens) {
      auto it = cache.find(g);
      if (it == cache.end()) {
        it = cache.emplace(g, dense_matrix(cfg, g, ceiling).template cast<std::complex<double>>()).first;
      }
      ComplexMatrix next = (prod * it->second).pruned();
      prod = std::move(next);
    }
    total += to_complex(t.scalar) * prod;
  }
  total.prune(std::complex<double>{});
  return total;
}

inline double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (std::ptrdiff_t k = 0; k < m.outerSize(); ++k) {
    for (ComplexMatrix::InnerIterator it(m, k); it; ++it) best = std::max(best, std::abs(it.value()));
  }
  return best;
}

template <typename S1, typename S2>
double max_abs_difference(const BasicOperatorExpr<S1>& a, const BasicOperatorExpr<S2>& b,
                          const SectorConfig& cfg, int ceiling = kDefaultOracleCeiling) {
  const ComplexMatrix diff = expression_matrix(a, cfg, ceiling) - expression_matrix(b, cfg, ceiling);
  return max_abs(diff);
}

/// True iff the dense matrices agree within `tol` (max-abs).
template <typename S1, typename S2>
bool equivalent(const BasicOperatorExpr<S1>& a, const BasicOperatorExpr<S2>& b, const SectorConfig& cfg,
                double tol = 1e-12, int ceiling = kDefaultOracleCeiling) {
  return max_abs_difference(a, b, cfg, ceiling) <= tol;
}

}  // namespace fermifold
