#pragma once

// Operator expressions: sums of scalar-weighted products of generators.
// Terms keep their written order; normal_order() produces the canonical form.

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "fermifold/fock.hpp"
#include "fermifold/scalar.hpp"

namespace fermifold {

template <typename S>
struct Term {
  S scalar{1};
  std::vector<Generator> gens;

  friend bool operator==(const Term&, const Term&) = default;
};

template <typename S>
class BasicOperatorExpr {
 public:
  using scalar_type = S;

  BasicOperatorExpr() = default;
  explicit BasicOperatorExpr(std::vector<Term<S>> terms) {
    for (auto& t : terms) add(std::move(t));
  }

  static BasicOperatorExpr identity() { return BasicOperatorExpr({Term<S>{S{1}, {}}}); }
  static BasicOperatorExpr generator(const Generator& g) { return BasicOperatorExpr({Term<S>{S{1}, {g}}}); }

  const std::vector<Term<S>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Appends a term; zero-scalar terms are dropped.
  void add(Term<S> t) {
    if (fermifold::is_zero(t.scalar)) return;
    terms_.push_back(std::move(t));
  }

  BasicOperatorExpr& operator+=(const BasicOperatorExpr& o) {
    for (const auto& t : o.terms_) add(t);
    return *this;
  }

  friend BasicOperatorExpr operator+(BasicOperatorExpr a, const BasicOperatorExpr& b) { return a += b; }

  friend BasicOperatorExpr operator*(const BasicOperatorExpr& a, const BasicOperatorExpr& b) {
    BasicOperatorExpr out;
    for (const auto& x : a.terms_) {
      for (const auto& y : b.terms_) {
        Term<S> t{x.scalar * y.scalar, x.gens};
        t.gens.insert(t.gens.end(), y.gens.begin(), y.gens.end());
        out.add(std::move(t));
      }
    }
    return out;
  }

  friend BasicOperatorExpr operator*(const S& c, BasicOperatorExpr e) {
    BasicOperatorExpr out;
    for (auto& t : e.terms_) out.add(Term<S>{c * t.scalar, std::move(t.gens)});
    return out;
  }

  friend bool operator==(const BasicOperatorExpr&, const BasicOperatorExpr&) = default;

 private:
  std::vector<Term<S>> terms_;
};

using OperatorExpr = BasicOperatorExpr<ExactScalar>;
using NumericExpr = BasicOperatorExpr<std::complex<double>>;

inline NumericExpr to_numeric(const OperatorExpr& e) {
  NumericExpr out;
  for (const auto& t : e.terms()) out.add({to_complex(t.scalar), t.gens});
  return out;
}

/// Mirror image: reversed generator order, swapped kinds, conjugated scalars.
template <typename S>
BasicOperatorExpr<S> adjoint(const BasicOperatorExpr<S>& e) {
  using std::conj;
  BasicOperatorExpr<S> out;
  for (const auto& t : e.terms()) {
    Term<S> a{conj(t.scalar), {}};
    for (auto it = t.gens.rbegin(); it != t.gens.rend(); ++it) {
      a.gens.push_back({it->kind == Action::create ? Action::annihilate : Action::create, it->mode});
    }
    out.add(std::move(a));
  }
  return out;
}

/// Throws RangeError for any generator outside the config.
template <typename S>
void validate(const BasicOperatorExpr<S>& e, const SectorConfig& cfg) {
  for (const auto& t : e.terms()) {
    for (const auto& g : t.gens) check_mode(cfg, g.mode);
  }
}

inline std::string to_string(const Generator& g) {
  return std::string(g.kind == Action::create ? "b+" : "b-") + to_string(g.mode);
}

namespace detail {

struct ScalarText {
  bool negative = false;
  std::string body;  // empty for a bare unit coefficient
};

inline ScalarText scalar_text(const Rational& re, const Rational& im, bool has_gens) {
  using boost::abs;
  if (im.numerator() == 0) {
    ScalarText t{re.numerator() < 0, format_rational(abs(re))};
    if (has_gens && t.body == "1") t.body.clear();
    return t;
  }
  if (re.numerator() == 0) return {im.numerator() < 0, format_rational(abs(im)) + "i"};
  return {false, "(" + format_rational(re) + "," + format_rational(im) + ")"};
}

inline ScalarText scalar_text(const std::complex<double>& c, bool has_gens) {
  if (c.imag() == 0.0) {
    ScalarText t{c.real() < 0, format_real(std::abs(c.real()))};
    if (has_gens && t.body == "1") t.body.clear();
    return t;
  }
  if (c.real() == 0.0) return {c.imag() < 0, format_real(std::abs(c.imag())) + "i"};
  return {false, "(" + format_real(c.real()) + "," + format_real(c.imag()) + ")"};
}

inline ScalarText scalar_text(const ExactScalar& s, bool has_gens) {
  return scalar_text(s.re, s.im, has_gens);
}

}  // namespace detail

/// DSL text; parse(to_string(e)) == e when every scalar has a terminating decimal expansion.
template <typename S>
std::string to_string(const BasicOperatorExpr<S>& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : e.terms()) {
    const auto st = detail::scalar_text(t.scalar, !t.gens.empty());
    if (first) {
      if (st.negative) out += "-";
    } else {
      out += st.negative ? " - " : " + ";
    }
    first = false;
    std::string body = st.body;
    for (const auto& g : t.gens) {
      if (!body.empty()) body += " ";
      body += to_string(g);
    }
    out += body;
  }
  return out;
}

}  // namespace fermifold
