#pragma once

// Differential k-forms on a D-dimensional chart, stored as a map from strictly
// increasing index tuples to coefficient functions:
//   omega = sum_{i_1 < ... < i_k} a_{i_1...i_k}(x) dx^{i_1} ^ ... ^ dx^{i_k}

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fermifold/coefficient.hpp"
#include "fermifold/errors.hpp"

namespace fermifold {

using IndexTuple = std::vector<int>;

/// Sorts `idx` ascending and returns the permutation sign, or 0 on a repeated index.
inline int sort_with_sign(IndexTuple& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (idx[i - 1] == idx[i]) return 0;
  }
  return sign;
}

template <typename T>
class Form {
 public:
  Form() = default;
  Form(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 1) throw ShapeError("form dimension must be at least 1");
    if (degree < 0 || degree > dim) throw DegreeError("form degree must lie in 0..dimension");
  }

  /// c dx^{i_1} ^ ... ^ dx^{i_k}; indices in any order.
  static Form basis(int dim, IndexTuple idx, T c = T{1}) {
    Form f(dim, static_cast<int>(idx.size()));
    f.add_term(std::move(idx), Coefficient<T>::constant(dim, c));
    return f;
  }

  /// A 0-form (function).
  static Form function(const Coefficient<T>& c) {
    Form f(c.dim(), 0);
    f.add_term({}, c);
    return f;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::map<IndexTuple, Coefficient<T>>& terms() const { return terms_; }

  /// Adds c dx^{idx}; reorders indices with the matching sign, drops repeated indices.
  void add_term(IndexTuple idx, const Coefficient<T>& c) {
    if (static_cast<int>(idx.size()) != degree_) throw ShapeError("term degree differs from form degree");
    if (c.dim() != dim_) throw ShapeError("coefficient dimension differs from form dimension");
    for (int i : idx) {
      if (i < 0 || i >= dim_) throw RangeError("form index " + std::to_string(i) + " outside chart");
    }
    const int sign = sort_with_sign(idx);
    if (sign == 0 || c.is_zero()) return;
    const Coefficient<T> signed_c = sign > 0 ? c : c.scaled(T{-1});
    auto it = terms_.find(idx);
    if (it == terms_.end()) {
      terms_.emplace(std::move(idx), signed_c);
      return;
    }
    it->second = it->second + signed_c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  Coefficient<T> coefficient(const IndexTuple& increasing) const {
    auto it = terms_.find(increasing);
    return it == terms_.end() ? Coefficient<T>::zero(dim_) : it->second;
  }

  T coefficient_at(const IndexTuple& increasing, const Point& x) const {
    auto it = terms_.find(increasing);
    return it == terms_.end() ? T{} : it->second(x);
  }

  Form scaled(T s) const {
    Form out(dim_, degree_);
    for (const auto& [idx, c] : terms_) out.add_term(idx, c.scaled(s));
    return out;
  }

  Form& operator+=(const Form& o) {
    check_compatible(o);
    for (const auto& [idx, c] : o.terms_) add_term(idx, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    check_compatible(o);
    for (const auto& [idx, c] : o.terms_) add_term(idx, c.scaled(T{-1}));
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }

  bool is_polynomial() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second.is_polynomial(); });
  }

 private:
  void check_compatible(const Form& o) const {
    if (o.dim_ != dim_ || o.degree_ != degree_) throw ShapeError("adding forms of different dimension or degree");
  }

  int dim_ = 1;
  int degree_ = 0;
  std::map<IndexTuple, Coefficient<T>> terms_;
};

using FormK = Form<double>;

/// All strictly increasing k-tuples from {0..n-1}.
inline std::vector<IndexTuple> increasing_tuples(int n, int k) {
  std::vector<IndexTuple> out;
  if (k < 0 || k > n) return out;
  IndexTuple cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

/// omega(v_1, ..., v_k) at x: sum over keys of a_I(x) det[v_j(I_m)].
template <typename T>
T evaluate(const Form<T>& form, std::span<const Point> vectors, const Point& x) {
  const int k = form.degree();
  if (static_cast<int>(vectors.size()) != k) throw ShapeError("form of degree k needs exactly k vectors");
  for (const auto& v : vectors) {
    if (v.size() != form.dim()) throw ShapeError("vector dimension differs from form dimension");
  }
  if (x.size() != form.dim()) throw ShapeError("point dimension differs from form dimension");
  T acc{};
  Eigen::MatrixXd minor(k, k);
  for (const auto& [idx, c] : form.terms()) {
    for (int j = 0; j < k; ++j) {
      for (int m = 0; m < k; ++m) minor(m, j) = vectors[static_cast<std::size_t>(j)](idx[static_cast<std::size_t>(m)]);
    }
    const double det = k == 0 ? 1.0 : minor.determinant();
    acc += c(x) * det;
  }
  return acc;
}

template <typename T>
Form<T> wedge(const Form<T>& a, const Form<T>& b) {
  if (a.dim() != b.dim()) throw ShapeError("wedge of forms on different charts");
  if (a.degree() + b.degree() > a.dim()) {
    throw DegreeError("wedge degree " + std::to_string(a.degree() + b.degree()) + " exceeds dimension " +
                      std::to_string(a.dim()));
  }
  Form<T> out(a.dim(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      IndexTuple idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      out.add_term(std::move(idx), ca * cb);
    }
  }
  return out;
}

/// d omega = sum_I sum_{i0} (d a_I / d x^{i0}) dx^{i0} ^ dx^I.
template <typename T>
Form<T> exterior_derivative(const Form<T>& form) {
  if (form.degree() == form.dim()) return Form<T>(form.dim(), form.degree());
  Form<T> out(form.dim(), form.degree() + 1);
  for (const auto& [idx, c] : form.terms()) {
    for (int i0 = 0; i0 < form.dim(); ++i0) {
      if (std::find(idx.begin(), idx.end(), i0) != idx.end()) continue;
      IndexTuple full{i0};
      full.insert(full.end(), idx.begin(), idx.end());
      out.add_term(std::move(full), c.derivative(i0));
    }
  }
  return out;
}

/// Interior product i_A omega for a real vector field given by its components.
inline FormK interior(std::span<const Coefficient<double>> field, const FormK& form) {
  if (static_cast<int>(field.size()) != form.dim()) throw ShapeError("vector field dimension differs from form");
  if (form.degree() == 0) return FormK(form.dim(), 0);
  FormK out(form.dim(), form.degree() - 1);
  for (const auto& [idx, c] : form.terms()) {
    for (std::size_t m = 0; m < idx.size(); ++m) {
      IndexTuple rest;
      for (std::size_t j = 0; j < idx.size(); ++j) {
        if (j != m) rest.push_back(idx[j]);
      }
      const Coefficient<double> term = field[static_cast<std::size_t>(idx[m])] * c;
      out.add_term(std::move(rest), (m % 2 == 0) ? term : term.scaled(-1.0));
    }
  }
  return out;
}

/// Largest |a_I(x)| over all keys and sample points.
template <typename T>
double max_abs_coefficient(const Form<T>& form, std::span<const Point> points) {
  double best = 0.0;
  for (const auto& [idx, c] : form.terms()) {
    for (const auto& x : points) best = std::max(best, static_cast<double>(std::abs(c(x))));
  }
  return best;
}

}  // namespace fermifold
