#pragma once

// Coefficient functions on R^D. A coefficient is either a polynomial, for
// which derivatives and products are exact, or an arbitrary reentrant
// callable, differentiated by central finite differences.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <type_traits>

#include "fermifold/polynomial.hpp"

namespace fermifold {

using Point = Eigen::VectorXd;

/// Central-difference step at coordinate value v.
inline double fd_step(double v) { return 1e-5 * (1.0 + std::abs(v)); }

/// Central-difference partial derivative of f along axis i.
template <typename F>
auto central_difference(const F& f, const Point& x, int i) {
  using R = std::decay_t<decltype(f(x))>;
  const double h = fd_step(x(i));
  Point xp = x;
  Point xm = x;
  xp(i) += h;
  xm(i) -= h;
  return R((f(xp) - f(xm)) / (2.0 * h));
}

template <typename T>
class Coefficient {
 public:
  using Fn = std::function<T(const Point&)>;

  Coefficient() = default;
  Coefficient(Polynomial<T> p) : dim_(p.dim()), poly_(std::move(p)) {}  // NOLINT
  Coefficient(int dim, Fn fn) : dim_(dim), fn_(std::make_shared<Fn>(std::move(fn))) {}

  static Coefficient constant(int dim, T c) { return Coefficient(Polynomial<T>::constant(dim, c)); }
  static Coefficient zero(int dim) { return Coefficient(Polynomial<T>(dim)); }

  int dim() const { return dim_; }
  bool is_polynomial() const { return poly_.has_value(); }
  const Polynomial<T>& polynomial() const { return *poly_; }
  bool is_zero() const { return poly_ && poly_->is_zero(); }

  T operator()(const Point& x) const {
    if (x.size() != dim_) throw ShapeError("coefficient evaluated at point of wrong dimension");
    return poly_ ? (*poly_)(x) : (*fn_)(x);
  }

  Coefficient derivative(int i) const {
    if (i < 0 || i >= dim_) throw RangeError("derivative index out of range");
    if (poly_) return Coefficient(poly_->derivative(i));
    auto fn = fn_;
    return Coefficient(dim_, [fn, i](const Point& x) { return central_difference(*fn, x, i); });
  }

  Coefficient scaled(T s) const {
    if (poly_) return Coefficient(poly_->scaled(s));
    auto self = *this;
    return Coefficient(dim_, [self, s](const Point& x) { return s * self(x); });
  }

  friend Coefficient operator+(const Coefficient& a, const Coefficient& b) {
    a.check_same_dim(b);
    if (a.poly_ && b.poly_) return Coefficient(*a.poly_ + *b.poly_);
    return Coefficient(a.dim_, [a, b](const Point& x) { return a(x) + b(x); });
  }

  friend Coefficient operator-(const Coefficient& a, const Coefficient& b) {
    a.check_same_dim(b);
    if (a.poly_ && b.poly_) return Coefficient(*a.poly_ - *b.poly_);
    return Coefficient(a.dim_, [a, b](const Point& x) { return a(x) - b(x); });
  }

  friend Coefficient operator*(const Coefficient& a, const Coefficient& b) {
    a.check_same_dim(b);
    if (a.poly_ && b.poly_) return Coefficient(*a.poly_ * *b.poly_);
    return Coefficient(a.dim_, [a, b](const Point& x) { return a(x) * b(x); });
  }

 private:
  void check_same_dim(const Coefficient& o) const {
    if (o.dim_ != dim_) throw ShapeError("coefficients over different dimensions");
  }

  int dim_ = 0;
  std::optional<Polynomial<T>> poly_;
  std::shared_ptr<const Fn> fn_;
};

}  // namespace fermifold
