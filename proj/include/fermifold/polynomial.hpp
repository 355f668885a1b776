#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "fermifold/errors.hpp"

namespace fermifold {

/// Multivariate polynomial in `dim` real variables with coefficients of type T.
template <typename T>
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  Polynomial() = default;
  explicit Polynomial(int dim) : dim_(dim) {}

  static Polynomial constant(int dim, T c) {
    Polynomial p(dim);
    p.add_monomial(Exponents(static_cast<std::size_t>(dim), 0), c);
    return p;
  }

  /// The coordinate function x_i.
  static Polynomial variable(int dim, int i) {
    if (i < 0 || i >= dim) throw RangeError("polynomial variable index out of range");
    Polynomial p(dim);
    Exponents e(static_cast<std::size_t>(dim), 0);
    e[static_cast<std::size_t>(i)] = 1;
    p.add_monomial(e, T{1});
    return p;
  }

  int dim() const { return dim_; }
  const std::map<Exponents, T>& monomials() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_monomial(const Exponents& e, T c) {
    if (static_cast<int>(e.size()) != dim_) throw ShapeError("monomial exponent vector has wrong length");
    if (c == T{}) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == T{}) terms_.erase(it);
    }
  }

  T operator()(const Eigen::VectorXd& x) const {
    if (x.size() != dim_) throw ShapeError("polynomial evaluated at point of wrong dimension");
    T acc{};
    for (const auto& [e, c] : terms_) {
      double m = 1.0;
      for (int i = 0; i < dim_; ++i) {
        const int k = e[static_cast<std::size_t>(i)];
        for (int j = 0; j < k; ++j) m *= x(i);
      }
      acc += c * m;
    }
    return acc;
  }

  Polynomial derivative(int i) const {
    if (i < 0 || i >= dim_) throw RangeError("derivative index out of range");
    Polynomial out(dim_);
    for (const auto& [e, c] : terms_) {
      const int k = e[static_cast<std::size_t>(i)];
      if (k == 0) continue;
      Exponents f = e;
      --f[static_cast<std::size_t>(i)];
      out.add_monomial(f, c * static_cast<double>(k));
    }
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_same_dim(o);
    for (const auto& [e, c] : o.terms_) add_monomial(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_same_dim(o);
    for (const auto& [e, c] : o.terms_) add_monomial(e, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  Polynomial operator-() const { return scaled(T{-1}); }

  Polynomial scaled(T s) const {
    Polynomial out(dim_);
    for (const auto& [e, c] : terms_) out.add_monomial(e, c * s);
    return out;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same_dim(b);
    Polynomial out(a.dim_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e = ea;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        out.add_monomial(e, ca * cb);
      }
    }
    return out;
  }

  /// p(g_0(y), ..., g_{dim-1}(y)) for real polynomials g over a new variable set.
  Polynomial compose(const std::vector<Polynomial<double>>& subs) const {
    if (static_cast<int>(subs.size()) != dim_) throw ShapeError("substitution count differs from dimension");
    const int new_dim = subs.empty() ? 0 : subs.front().dim();
    Polynomial out(new_dim);
    std::vector<std::vector<Polynomial<double>>> powers(subs.size());
    for (const auto& [e, c] : terms_) {
      Polynomial<double> mono = Polynomial<double>::constant(new_dim, 1.0);
      for (std::size_t i = 0; i < e.size(); ++i) {
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(Polynomial<double>::constant(new_dim, 1.0));
        while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * subs[i]);
        if (e[i] > 0) mono = mono * pw[static_cast<std::size_t>(e[i])];
      }
      for (const auto& [me, mc] : mono.monomials()) out.add_monomial(me, c * mc);
    }
    return out;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void check_same_dim(const Polynomial& o) const {
    if (o.dim_ != dim_) throw ShapeError("polynomials over different dimensions");
  }

  int dim_ = 0;
  std::map<Exponents, T> terms_;
};

template <typename T>
Polynomial<T> operator*(T s, const Polynomial<T>& p) {
  return p.scaled(s);
}

/// Polynomial<double> lifted to another coefficient type.
template <typename T>
Polynomial<T> lift(const Polynomial<double>& p) {
  Polynomial<T> out(p.dim());
  for (const auto& [e, c] : p.monomials()) out.add_monomial(e, T(c));
  return out;
}

}  // namespace fermifold
