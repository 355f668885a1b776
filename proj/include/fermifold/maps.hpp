#pragma once

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fermifold/coefficient.hpp"
#include "fermifold/errors.hpp"
#include "fermifold/forms.hpp"

namespace fermifold {

/// Differentiable map R^source -> R^target given by component functions.
class SmoothMap {
 public:
  using JacobianFn = std::function<Eigen::MatrixXd(const Point&)>;

  SmoothMap() = default;
  SmoothMap(int source_dim, std::vector<Coefficient<double>> components, JacobianFn analytic = {})
      : source_(source_dim), components_(std::move(components)) {
    if (source_dim < 1 || components_.empty()) throw ShapeError("smooth map needs positive dimensions");
    for (const auto& c : components_) {
      if (c.dim() != source_dim) throw ShapeError("map component defined on wrong source dimension");
    }
    if (analytic) analytic_ = std::make_shared<const JacobianFn>(std::move(analytic));
  }

  static SmoothMap identity(int dim) {
    std::vector<Coefficient<double>> comps;
    for (int i = 0; i < dim; ++i) comps.emplace_back(Polynomial<double>::variable(dim, i));
    return SmoothMap(dim, std::move(comps));
  }

  /// x -> L x + b.
  static SmoothMap affine(const Eigen::MatrixXd& l, const Eigen::VectorXd& b) {
    if (b.size() != l.rows()) throw ShapeError("affine offset has wrong length");
    const int src = static_cast<int>(l.cols());
    std::vector<Coefficient<double>> comps;
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
      Polynomial<double> p = Polynomial<double>::constant(src, b(i));
      for (int j = 0; j < src; ++j) p += Polynomial<double>::variable(src, j).scaled(l(i, j));
      comps.emplace_back(std::move(p));
    }
    return SmoothMap(src, std::move(comps));
  }

  static SmoothMap linear(const Eigen::MatrixXd& l) { return affine(l, Eigen::VectorXd::Zero(l.rows())); }

  int source_dim() const { return source_; }
  int target_dim() const { return static_cast<int>(components_.size()); }
  const std::vector<Coefficient<double>>& components() const { return components_; }
  bool is_polynomial() const {
    for (const auto& c : components_) {
      if (!c.is_polynomial()) return false;
    }
    return true;
  }
  bool has_analytic_jacobian() const { return analytic_ != nullptr; }

  Point operator()(const Point& x) const {
    Point y(target_dim());
    for (int i = 0; i < target_dim(); ++i) y(i) = components_[static_cast<std::size_t>(i)](x);
    return y;
  }

  /// Rows are target components. Analytic if supplied, exact for polynomials, else central differences.
  Eigen::MatrixXd jacobian(const Point& x) const {
    if (analytic_) {
      Eigen::MatrixXd j = (*analytic_)(x);
      if (j.rows() != target_dim() || j.cols() != source_) throw ShapeError("analytic Jacobian has wrong shape");
      return j;
    }
    if (!is_polynomial()) return jacobian_fd(x);
    Eigen::MatrixXd j(target_dim(), source_);
    for (int i = 0; i < target_dim(); ++i) {
      const auto& p = components_[static_cast<std::size_t>(i)].polynomial();
      for (int k = 0; k < source_; ++k) j(i, k) = p.derivative(k)(x);
    }
    return j;
  }

  Eigen::MatrixXd jacobian_fd(const Point& x) const {
    if (x.size() != source_) throw ShapeError("point dimension differs from map source");
    Eigen::MatrixXd j(target_dim(), source_);
    for (int k = 0; k < source_; ++k) {
      j.col(k) = central_difference([this](const Point& p) -> Point { return (*this)(p); }, x, k);
    }
    return j;
  }

 private:
  int source_ = 0;
  std::vector<Coefficient<double>> components_;
  std::shared_ptr<const JacobianFn> analytic_;
};

/// (f o g)(x) = f(g(x)); exact when both maps are polynomial.
inline SmoothMap compose(const SmoothMap& f, const SmoothMap& g) {
  if (f.source_dim() != g.target_dim()) throw ShapeError("composition of maps with mismatched dimensions");
  std::vector<Coefficient<double>> comps;
  if (f.is_polynomial() && g.is_polynomial()) {
    std::vector<Polynomial<double>> subs;
    for (const auto& c : g.components()) subs.push_back(c.polynomial());
    for (const auto& c : f.components()) comps.emplace_back(c.polynomial().compose(subs));
    return SmoothMap(g.source_dim(), std::move(comps));
  }
  for (std::size_t i = 0; i < f.components().size(); ++i) {
    comps.emplace_back(g.source_dim(), [f, g, i](const Point& x) { return f.components()[i](g(x)); });
  }
  return SmoothMap(g.source_dim(), std::move(comps), [f, g](const Point& x) {
    return Eigen::MatrixXd(f.jacobian(g(x)) * g.jacobian(x));
  });
}

namespace detail {

inline double minor_det(const Eigen::MatrixXd& j, const IndexTuple& rows, const IndexTuple& cols) {
  const auto k = static_cast<Eigen::Index>(rows.size());
  if (k == 0) return 1.0;
  Eigen::MatrixXd m(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) m(a, b) = j(rows[static_cast<std::size_t>(a)], cols[static_cast<std::size_t>(b)]);
  }
  return m.determinant();
}

}  // namespace detail

/// Coefficient of f*omega on the increasing source tuple `cols` at x:
/// sum_I omega_I(f(x)) det J[I, cols].
template <typename T>
T pullback_coefficient(const SmoothMap& f, const Form<T>& form, const IndexTuple& cols, const Point& x) {
  const Point y = f(x);
  const Eigen::MatrixXd j = f.jacobian(x);
  T acc{};
  for (const auto& [idx, c] : form.terms()) acc += c(y) * detail::minor_det(j, idx, cols);
  return acc;
}

/// f*omega. Exact for polynomial map and coefficients; otherwise a pointwise closure.
template <typename T>
Form<T> pullback(const SmoothMap& f, const Form<T>& form) {
  if (form.dim() != f.target_dim()) throw ShapeError("form lives on " + std::to_string(form.dim()) +
                                                     " dimensions but map targets " + std::to_string(f.target_dim()));
  const int k = form.degree();
  if (k > f.source_dim()) throw ShapeError("form degree exceeds map source dimension");
  const int src = f.source_dim();
  Form<T> out(src, k);
  if (f.is_polynomial() && form.is_polynomial()) {
    std::vector<Polynomial<double>> subs;
    for (const auto& c : f.components()) subs.push_back(c.polynomial());
    std::vector<Form<T>> differentials;
    for (const auto& p : subs) {
      Form<T> df(src, 1);
      for (int j = 0; j < src; ++j) df.add_term({j}, Coefficient<T>(lift<T>(p.derivative(j))));
      differentials.push_back(std::move(df));
    }
    for (const auto& [idx, c] : form.terms()) {
      Form<T> term = Form<T>::function(Coefficient<T>(c.polynomial().compose(subs)));
      for (int i : idx) term = wedge(term, differentials[static_cast<std::size_t>(i)]);
      out += term;
    }
    return out;
  }
  for (const auto& cols : increasing_tuples(src, k)) {
    out.add_term(cols, Coefficient<T>(src, [f, form, cols](const Point& x) {
                   return pullback_coefficient(f, form, cols, x);
                 }));
  }
  return out;
}

}  // namespace fermifold
