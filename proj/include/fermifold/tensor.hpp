#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "fermifold/errors.hpp"
#include "fermifold/forms.hpp"

namespace fermifold {

/// Dense component array T^{i_1..i_p}_{j_1..j_q} over a D-dimensional chart, row-major with
/// the contravariant indices first.
template <typename T>
class CoefficientTensor {
 public:
  CoefficientTensor(int dim, int contravariant, int covariant)
      : dim_(dim), p_(contravariant), q_(covariant) {
    if (dim < 1 || contravariant < 0 || covariant < 0) throw ShapeError("invalid tensor shape");
    std::size_t size = 1;
    for (int i = 0; i < rank(); ++i) size *= static_cast<std::size_t>(dim);
    data_.assign(size, T{});
  }

  int dim() const { return dim_; }
  int contravariant() const { return p_; }
  int covariant() const { return q_; }
  int rank() const { return p_ + q_; }

  T& at(const IndexTuple& idx) { return data_[offset(idx)]; }
  const T& at(const IndexTuple& idx) const { return data_[offset(idx)]; }

 private:
  std::size_t offset(const IndexTuple& idx) const {
    if (static_cast<int>(idx.size()) != rank()) throw ShapeError("tensor index has wrong rank");
    std::size_t off = 0;
    for (int i : idx) {
      if (i < 0 || i >= dim_) throw RangeError("tensor index " + std::to_string(i) + " out of range");
      off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    }
    return off;
  }

  int dim_;
  int p_;
  int q_;
  std::vector<T> data_;
};

namespace detail {

inline int permutation_sign(const std::vector<int>& perm) {
  int sign = 1;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

/// Calls f(perm, sign) for every permutation of 0..n-1 in lexicographic order.
template <typename F>
void for_each_permutation(int n, F&& f) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    f(perm, permutation_sign(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace detail

/// omega_I = (1/sqrt(n!)) sum_sigma sgn(sigma) T_{I o sigma} for an order (0, n) tensor.
template <typename T>
Form<T> antisymmetrize(const CoefficientTensor<T>& t) {
  if (t.contravariant() != 0) throw ShapeError("antisymmetrize needs a covariant tensor");
  const int n = t.covariant();
  if (n > t.dim()) throw DegreeError("tensor order exceeds dimension");
  const double norm = 1.0 / std::sqrt(std::tgamma(n + 1.0));
  Form<T> out(t.dim(), n);
  for (const auto& key : increasing_tuples(t.dim(), n)) {
    T acc{};
    IndexTuple idx(key.size());
    detail::for_each_permutation(n, [&](const std::vector<int>& perm, int sign) {
      for (std::size_t m = 0; m < key.size(); ++m) idx[m] = key[static_cast<std::size_t>(perm[m])];
      acc += static_cast<double>(sign) * t.at(idx);
    });
    if (acc != T{}) out.add_term(key, Coefficient<T>::constant(t.dim(), norm * acc));
  }
  return out;
}

/// Fully antisymmetric covariant tensor with T_{I o sigma} = sgn(sigma) omega_I(x).
template <typename T>
CoefficientTensor<T> to_tensor(const Form<T>& form, const Point& x) {
  CoefficientTensor<T> out(form.dim(), 0, form.degree());
  for (const auto& [key, c] : form.terms()) {
    const T v = c(x);
    IndexTuple idx(key.size());
    detail::for_each_permutation(form.degree(), [&](const std::vector<int>& perm, int sign) {
      for (std::size_t m = 0; m < key.size(); ++m) idx[m] = key[static_cast<std::size_t>(perm[m])];
      out.at(idx) = static_cast<double>(sign) * v;
    });
  }
  return out;
}

}  // namespace fermifold
