#pragma once

// Index algebra of the 12-dimensional chart: composite (lambda, mu, alpha)
// labels, the eta/u light-cone change of coordinates and the split
// quadratic forms on each 6-dimensional half.

#include <array>
#include <cmath>
#include <compare>
#include <string>

#include "fermifold/errors.hpp"

namespace fermifold {

inline constexpr double kInvSqrt2 = 0.70710678118654752440;
inline constexpr int kChartDim = 12;

/// Composite chart label (lambda, mu, alpha), lambda, mu in {1,2}, alpha in {1,2,3}.
struct CompositeIndex {
  int lambda = 1;
  int mu = 1;
  int alpha = 1;

  friend constexpr auto operator<=>(const CompositeIndex&, const CompositeIndex&) = default;
};

constexpr bool is_valid(const CompositeIndex& idx) {
  return idx.lambda >= 1 && idx.lambda <= 2 && idx.mu >= 1 && idx.mu <= 2 && idx.alpha >= 1 &&
         idx.alpha <= 3;
}

/// Lexicographic position of (lambda, mu, alpha): (1,1,1) -> 0, (2,2,3) -> 11.
inline int flatten(const CompositeIndex& idx) {
  if (!is_valid(idx)) {
    throw RangeError("composite index (" + std::to_string(idx.lambda) + "," +
                     std::to_string(idx.mu) + "," + std::to_string(idx.alpha) +
                     ") out of range");
  }
  return ((idx.lambda - 1) * 2 + (idx.mu - 1)) * 3 + (idx.alpha - 1);
}

inline CompositeIndex unflatten(int flat) {
  if (flat < 0 || flat >= kChartDim) {
    throw RangeError("flat chart index " + std::to_string(flat) + " outside 0..11");
  }
  return CompositeIndex{flat / 6 + 1, (flat / 3) % 2 + 1, flat % 3 + 1};
}

enum class Chart { eta, u };
enum class Branch { plus, minus };

/// epsilon_eta = +1, epsilon_u = -1.
constexpr int epsilon(Chart c) { return c == Chart::eta ? 1 : -1; }

/// Light-cone label (kind, sign, alpha).
struct SectorLabel {
  Chart kind = Chart::eta;
  Branch sign = Branch::plus;
  int alpha = 1;

  friend constexpr auto operator<=>(const SectorLabel&, const SectorLabel&) = default;
};

/// Labelling bijection used for serialization: eta+ <-> (1,1), eta- <-> (1,2),
/// u+ <-> (2,1), u- <-> (2,2), alpha carried through.
inline CompositeIndex to_composite(const SectorLabel& s) {
  if (s.alpha < 1 || s.alpha > 3) throw RangeError("sector label alpha out of range");
  return CompositeIndex{s.kind == Chart::eta ? 1 : 2, s.sign == Branch::plus ? 1 : 2, s.alpha};
}

inline SectorLabel to_sector_label(const CompositeIndex& idx) {
  if (!is_valid(idx)) throw RangeError("composite index out of range");
  return SectorLabel{idx.lambda == 1 ? Chart::eta : Chart::u,
                     idx.mu == 1 ? Branch::plus : Branch::minus, idx.alpha};
}

/// zeta coordinates, indexed by flatten(CompositeIndex).
using PointZ = std::array<double, kChartDim>;

/// Light-cone components of one half of the chart, plus_alpha and minus_alpha.
struct PointSector {
  std::array<double, 3> plus{};
  std::array<double, 3> minus{};

  const std::array<double, 3>& branch(Branch b) const { return b == Branch::plus ? plus : minus; }
  std::array<double, 3>& branch(Branch b) { return b == Branch::plus ? plus : minus; }

  friend bool operator==(const PointSector&, const PointSector&) = default;
};

struct LightconePoint {
  PointSector eta;
  PointSector u;
};

inline double zeta(const PointZ& z, int lambda, int mu, int alpha) {
  return z[static_cast<std::size_t>(flatten({lambda, mu, alpha}))];
}

/// eta^(+a) = (z^(1,1,a) + z^(2,1,a))/sqrt2, eta^(-a) = (z^(1,2,a) + z^(2,2,a))/sqrt2,
/// u^(+a) = (z^(1,1,a) - z^(2,1,a))/sqrt2,   u^(-a) = (z^(1,2,a) - z^(2,2,a))/sqrt2.
inline LightconePoint to_lightcone(const PointZ& z) {
  LightconePoint out;
  for (int a = 1; a <= 3; ++a) {
    const auto i = static_cast<std::size_t>(a - 1);
    out.eta.plus[i] = kInvSqrt2 * (zeta(z, 1, 1, a) + zeta(z, 2, 1, a));
    out.eta.minus[i] = kInvSqrt2 * (zeta(z, 1, 2, a) + zeta(z, 2, 2, a));
    out.u.plus[i] = kInvSqrt2 * (zeta(z, 1, 1, a) - zeta(z, 2, 1, a));
    out.u.minus[i] = kInvSqrt2 * (zeta(z, 1, 2, a) - zeta(z, 2, 2, a));
  }
  return out;
}

inline PointZ from_lightcone(const PointSector& eta, const PointSector& u) {
  PointZ z{};
  for (int a = 1; a <= 3; ++a) {
    const auto i = static_cast<std::size_t>(a - 1);
    z[static_cast<std::size_t>(flatten({1, 1, a}))] = kInvSqrt2 * (eta.plus[i] + u.plus[i]);
    z[static_cast<std::size_t>(flatten({2, 1, a}))] = kInvSqrt2 * (eta.plus[i] - u.plus[i]);
    z[static_cast<std::size_t>(flatten({1, 2, a}))] = kInvSqrt2 * (eta.minus[i] + u.minus[i]);
    z[static_cast<std::size_t>(flatten({2, 2, a}))] = kInvSqrt2 * (eta.minus[i] - u.minus[i]);
  }
  return z;
}

inline PointZ from_lightcone(const LightconePoint& p) { return from_lightcone(p.eta, p.u); }

/// Polarization of the off-diagonal light-cone metric: sum_a (a+ b- + a- b+).
inline double bilinear_form(const PointSector& a, const PointSector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 3; ++i) s += a.plus[i] * b.minus[i] + a.minus[i] * b.plus[i];
  return s;
}

/// 2 * sum_a plus_a * minus_a.
inline double quadratic_form(const PointSector& p) { return bilinear_form(p, p); }

/// Space-like part x (signature +++) and time-like part t (signature ---).
struct MinkowskiSplit {
  std::array<double, 3> x{};
  std::array<double, 3> t{};
};

inline MinkowskiSplit minkowski_split(const PointSector& p) {
  MinkowskiSplit s;
  for (std::size_t i = 0; i < 3; ++i) {
    s.x[i] = kInvSqrt2 * (p.plus[i] + p.minus[i]);
    s.t[i] = kInvSqrt2 * (p.plus[i] - p.minus[i]);
  }
  return s;
}

inline PointSector minkowski_join(const MinkowskiSplit& s) {
  PointSector p;
  for (std::size_t i = 0; i < 3; ++i) {
    p.plus[i] = kInvSqrt2 * (s.x[i] + s.t[i]);
    p.minus[i] = kInvSqrt2 * (s.x[i] - s.t[i]);
  }
  return p;
}

}  // namespace fermifold
