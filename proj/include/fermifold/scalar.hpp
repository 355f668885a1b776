#pragma once

// Scalar types for operator expressions. ExactScalar keeps complex rationals
// while rewriting; std::complex<double> is used for numerically specified
// coefficients (e.g. lifted one-particle observables).

#include <boost/rational.hpp>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <sstream>
#include <string>

namespace fermifold {

using Rational = boost::rational<std::int64_t>;

struct ExactScalar {
  Rational re{0};
  Rational im{0};

  ExactScalar() = default;
  ExactScalar(std::int64_t r) : re(r) {}  // NOLINT
  ExactScalar(Rational r, Rational i = Rational{0}) : re(r), im(i) {}

  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  ExactScalar operator-() const { return {-re, -im}; }
  ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }

  friend bool operator==(const ExactScalar&, const ExactScalar&) = default;
};

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline bool is_zero(const ExactScalar& s) { return s.re.numerator() == 0 && s.im.numerator() == 0; }
inline bool is_zero(const std::complex<double>& s) { return s == std::complex<double>{}; }

inline std::complex<double> to_complex(const ExactScalar& s) { return {to_double(s.re), to_double(s.im)}; }
inline std::complex<double> to_complex(const std::complex<double>& s) { return s; }

inline ExactScalar conj(const ExactScalar& s) { return {s.re, -s.im}; }

/// Exact decimal text when the denominator has only factors 2 and 5; otherwise a
/// round-trippable double.
inline std::string format_rational(const Rational& r) {
  std::int64_t num = r.numerator();
  std::int64_t den = r.denominator();
  int twos = 0;
  int fives = 0;
  std::int64_t d = den;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1 || twos > 18 || fives > 18) {
    std::ostringstream os;
    os.precision(17);
    os << to_double(r);
    return os.str();
  }
  const int digits = std::max(twos, fives);
  // Scale the numerator so the denominator becomes 10^digits.
  __int128 scaled = num;
  for (int i = twos; i < digits; ++i) scaled *= 2;
  for (int i = fives; i < digits; ++i) scaled *= 5;
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string body;
  if (scaled == 0) body = "0";
  while (scaled > 0) {
    body.insert(body.begin(), static_cast<char>('0' + static_cast<int>(scaled % 10)));
    scaled /= 10;
  }
  if (digits > 0) {
    while (static_cast<int>(body.size()) <= digits) body.insert(body.begin(), '0');
    body.insert(body.end() - digits, '.');
  }
  return negative ? "-" + body : body;
}

inline std::string format_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace fermifold
