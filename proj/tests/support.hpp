#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include "fermifold/fermifold.hpp"

namespace fermifold::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240917ULL);
  return gen;
}

inline double uniform(double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline std::complex<double> random_complex() { return {uniform(), uniform()}; }

inline Point random_point(int dim, double scale = 1.0) {
  Point x(dim);
  for (int i = 0; i < dim; ++i) x(i) = uniform(-scale, scale);
  return x;
}

inline PointSector random_sector_point(double scale = 1.0) {
  PointSector p;
  for (std::size_t i = 0; i < 3; ++i) {
    p.plus[i] = uniform(-scale, scale);
    p.minus[i] = uniform(-scale, scale);
  }
  return p;
}

/// Every config with per-sector mode counts in 0..max_per_sector and total in [1, max_total].
inline std::vector<SectorConfig> configs_up_to(int max_per_sector, int max_total) {
  std::vector<SectorConfig> out;
  for (int a = 0; a <= max_per_sector; ++a) {
    for (int b = 0; b <= max_per_sector; ++b) {
      for (int c = 0; c <= max_per_sector; ++c) {
        for (int d = 0; d <= max_per_sector; ++d) {
          const int k = a + b + c + d;
          if (k >= 1 && k <= max_total) out.push_back(make_config(a, b, c, d));
        }
      }
    }
  }
  return out;
}

/// Random polynomial in `dim` variables with total degree <= max_degree and small integer
/// coefficients.
inline Polynomial<double> random_polynomial(int dim, int max_degree, int terms) {
  Polynomial<double> p(dim);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(static_cast<std::size_t>(dim), 0);
    int budget = uniform_int(0, max_degree);
    while (budget-- > 0) ++e[static_cast<std::size_t>(uniform_int(0, dim - 1))];
    p.add_monomial(e, static_cast<double>(uniform_int(-3, 3)));
  }
  return p;
}

inline FormK random_polynomial_form(int dim, int degree, int max_degree) {
  FormK f(dim, degree);
  for (const auto& key : increasing_tuples(dim, degree)) {
    if (uniform_int(0, 2) == 0) continue;
    f.add_term(key, Coefficient<double>(random_polynomial(dim, max_degree, 3)));
  }
  return f;
}

/// Independent model: each sector holds a sorted list of occupied serials; a creator is
/// inserted by bubbling it from the front of its own sector's list.
struct ListState {
  std::array<std::vector<int>, 4> lists;
  friend bool operator==(const ListState&, const ListState&) = default;
};

inline ListState list_from_index(const SectorConfig& cfg, std::size_t idx) {
  ListState s;
  int pos = cfg.total() - 1;
  for (Sector sec : kSectors) {
    for (int r = 1; r <= cfg.count(sec); ++r, --pos) {
      if ((idx >> pos) & 1U) s.lists[index_of(sec)].push_back(r);
    }
  }
  return s;
}

inline std::size_t index_from_list(const SectorConfig& cfg, const ListState& s) {
  std::size_t idx = 0;
  int pos = cfg.total() - 1;
  for (Sector sec : kSectors) {
    const auto& l = s.lists[index_of(sec)];
    for (int r = 1; r <= cfg.count(sec); ++r, --pos) {
      if (std::find(l.begin(), l.end(), r) != l.end()) idx |= std::size_t{1} << pos;
    }
  }
  return idx;
}

inline Eigen::MatrixXi list_oracle(const SectorConfig& cfg, const Generator& g) {
  const auto n = static_cast<Eigen::Index>(std::size_t{1} << cfg.total());
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    ListState s = list_from_index(cfg, static_cast<std::size_t>(col));
    auto& l = s.lists[index_of(g.mode.sector)];
    const auto found = std::find(l.begin(), l.end(), g.mode.serial);
    int sign = 1;
    if (g.kind == Action::create) {
      if (found != l.end()) continue;
      l.insert(l.begin(), g.mode.serial);
      for (std::size_t i = 0; i + 1 < l.size() && l[i] > l[i + 1]; ++i) {
        std::swap(l[i], l[i + 1]);
        sign = -sign;
      }
    } else {
      if (found == l.end()) continue;
      for (auto it = l.begin(); it != found; ++it) sign = -sign;
      l.erase(found);
    }
    m(static_cast<Eigen::Index>(index_from_list(cfg, s)), col) = sign;
  }
  return m;
}

/// Dense matrix of an expression from list-model generator matrices.
template <typename S>
Eigen::MatrixXcd oracle_matrix(const BasicOperatorExpr<S>& e, const SectorConfig& cfg) {
  const auto n = static_cast<Eigen::Index>(std::size_t{1} << cfg.total());
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& t : e.terms()) {
    Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(n, n);
    for (const auto& g : t.gens) prod = prod * list_oracle(cfg, g).template cast<std::complex<double>>();
    total += to_complex(t.scalar) * prod;
  }
  return total;
}

inline Eigen::VectorXd unit(int dim, int i) { return Eigen::VectorXd::Unit(dim, i); }

}  // namespace fermifold::testing
