#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "fermifold/errors.hpp"
#include "fermifold/forms.hpp"
#include "fermifold/maps.hpp"

namespace fermifold {

inline constexpr int kDefaultQuadratureOrder = 8;

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
inline GaussRule gauss_legendre(int order) {
  if (order < 1 || order > 128) throw RangeError("quadrature order must lie in 1..128");
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const int n = order;
  // Returns (P_n(x), P_n'(x)).
  const auto legendre = [n](double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

/// Axis-aligned box prod_i [lower_i, upper_i].
struct Box {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  int dim() const { return static_cast<int>(lower.size()); }

  static Box unit(int dim) { return {Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Ones(dim)}; }
};

inline void check_box(const Box& b) {
  if (b.lower.size() != b.upper.size() || b.lower.size() < 1) throw ShapeError("box bounds have mismatched lengths");
  for (Eigen::Index i = 0; i < b.lower.size(); ++i) {
    if (!(b.lower(i) < b.upper(i))) throw ShapeError("degenerate box along axis " + std::to_string(i));
  }
}

struct ChainPiece {
  Box box;
  SmoothMap map;
  int orientation = 1;
  int multiplicity = 1;
};

/// Formal integer combination of oriented parameterized boxes.
struct Chain {
  std::vector<ChainPiece> pieces;

  Chain& add(ChainPiece p) {
    check_box(p.box);
    if (p.orientation != 1 && p.orientation != -1) throw ShapeError("orientation must be +1 or -1");
    pieces.push_back(std::move(p));
    return *this;
  }
};

struct IntegrationResult {
  double value = 0.0;
  /// |Q(order) - Q(order + 4)|.
  double error_estimate = 0.0;
};

namespace detail {

inline double integrate_piece(const FormK& form, const ChainPiece& piece, const GaussRule& rule) {
  const int k = piece.box.dim();
  const IndexTuple cols = [k] {
    IndexTuple c(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
    return c;
  }();
  const Eigen::VectorXd half = 0.5 * (piece.box.upper - piece.box.lower);
  const Eigen::VectorXd mid = 0.5 * (piece.box.upper + piece.box.lower);
  const double volume = half.prod();
  const auto m = rule.nodes.size();
  std::vector<std::size_t> counter(static_cast<std::size_t>(k), 0);
  Point x(k);
  double acc = 0.0;
  while (true) {
    double w = volume;
    for (int a = 0; a < k; ++a) {
      const auto c = counter[static_cast<std::size_t>(a)];
      x(a) = mid(a) + half(a) * rule.nodes[c];
      w *= rule.weights[c];
    }
    acc += w * pullback_coefficient(piece.map, form, cols, x);
    int a = 0;
    while (a < k && ++counter[static_cast<std::size_t>(a)] == m) counter[static_cast<std::size_t>(a++)] = 0;
    if (a == k) break;
  }
  return acc;
}

inline double integrate_with(const FormK& form, const Chain& chain, const GaussRule& rule) {
  double total = 0.0;
  for (const auto& p : chain.pieces) {
    total += p.multiplicity * p.orientation * integrate_piece(form, p, rule);
  }
  return total;
}

}  // namespace detail

/// sum_i m_i Or_i int_{box_i} f_i^* omega, tensor-product Gauss-Legendre per axis.
inline IntegrationResult integrate(const FormK& form, const Chain& chain, int order = kDefaultQuadratureOrder) {
  for (std::size_t i = 0; i < chain.pieces.size(); ++i) {
    const auto& p = chain.pieces[i];
    check_box(p.box);
    if (p.map.source_dim() != p.box.dim()) throw ShapeError("piece " + std::to_string(i) + ": map source differs from box");
    if (p.map.target_dim() != form.dim()) throw ShapeError("piece " + std::to_string(i) + ": map target differs from form");
    if (form.degree() != p.box.dim()) {
      throw ShapeError("piece " + std::to_string(i) + ": form degree " + std::to_string(form.degree()) +
                       " differs from box dimension " + std::to_string(p.box.dim()));
    }
  }
  IntegrationResult r;
  r.value = detail::integrate_with(form, chain, gauss_legendre(order));
  r.error_estimate = std::abs(r.value - detail::integrate_with(form, chain, gauss_legendre(order + 4)));
  return r;
}

}  // namespace fermifold
