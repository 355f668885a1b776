#pragma once

// Plane-wave state functions on the eta/u halves of the chart, Dirac spinors,
// the mode wave functions F_r and the matrix elements built from them:
// one-point fields, Slater-determinant n-point functions and pair correlators.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fermifold/errors.hpp"
#include "fermifold/fock.hpp"
#include "fermifold/grading.hpp"

namespace fermifold {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

struct Momentum {
  Vec3 p3{};
  double mass = 1.0;
  double energy = 1.0;
};

inline double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// On-shell momentum, E = sqrt(p^2 + m^2).
inline Momentum mass_shell(const Vec3& p3, double mass) {
  if (!(mass > 0.0)) throw DomainError("mass must be positive");
  return Momentum{p3, mass, std::sqrt(dot3(p3, p3) + mass * mass)};
}

inline constexpr Vec3 kDefaultTimeDirection{1.0, 0.0, 0.0};

inline void check_unit(const Vec3& d) {
  if (std::abs(dot3(d, d) - 1.0) > 1e-12) throw DomainError("time direction must be a unit vector");
}

/// plus_a = (E d_a + p_a)/sqrt2, minus_a = (E d_a - p_a)/sqrt2.
inline PointSector lightcone_momentum(const Momentum& q, const Vec3& time_direction = kDefaultTimeDirection) {
  check_unit(time_direction);
  PointSector out;
  for (std::size_t a = 0; a < 3; ++a) {
    out.plus[a] = kInvSqrt2 * (q.energy * time_direction[a] + q.p3[a]);
    out.minus[a] = kInvSqrt2 * (q.energy * time_direction[a] - q.p3[a]);
  }
  return out;
}

/// Inverse of lightcone_momentum; the mass is recovered from the quadratic form.
inline Momentum momentum_from_lightcone(const PointSector& p, const Vec3& time_direction = kDefaultTimeDirection) {
  check_unit(time_direction);
  Momentum q;
  Vec3 e_dir{};
  for (std::size_t a = 0; a < 3; ++a) {
    q.p3[a] = kInvSqrt2 * (p.plus[a] - p.minus[a]);
    e_dir[a] = kInvSqrt2 * (p.plus[a] + p.minus[a]);
  }
  q.energy = dot3(e_dir, time_direction);
  const double m2 = quadratic_form(p);
  if (!(m2 > 0.0)) throw DomainError("light-cone momentum is not time-like");
  q.mass = std::sqrt(m2);
  return q;
}

enum class SpinorKind { u, v };
enum class Frequency { positive, negative };

struct Spinor {
  Eigen::Vector4cd components = Eigen::Vector4cd::Zero();
  int spin = 1;
  SpinorKind kind = SpinorKind::u;
};

/// a^dagger gamma0 b with gamma0 = diag(1,1,-1,-1).
inline cplx dirac_bar(const Eigen::Vector4cd& a, const Eigen::Vector4cd& b) {
  return std::conj(a(0)) * b(0) + std::conj(a(1)) * b(1) - std::conj(a(2)) * b(2) - std::conj(a(3)) * b(3);
}

/// Rest-frame doublet boosted with lower (upper, for v) components (sigma.p)/(E+m);
/// normalized to u-bar u = 1, v-bar v = -1.
inline Spinor dirac_spinor(const Momentum& q, int s, SpinorKind kind) {
  if (s != 1 && s != -1) throw DomainError("spin label must be +1 or -1");
  const cplx i{0.0, 1.0};
  Eigen::Matrix2cd sigma_p;
  sigma_p << q.p3[2], q.p3[0] - i * q.p3[1], q.p3[0] + i * q.p3[1], -q.p3[2];
  const double n = std::sqrt((q.energy + q.mass) / (2.0 * q.mass));
  const double inv = 1.0 / (q.energy + q.mass);
  Spinor out;
  out.spin = s;
  out.kind = kind;
  if (kind == SpinorKind::u) {
    const Eigen::Vector2cd chi = s == 1 ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0);
    out.components << n * chi, n * inv * (sigma_p * chi);
  } else {
    const Eigen::Vector2cd chi = s == 1 ? Eigen::Vector2cd(0.0, 1.0) : Eigen::Vector2cd(1.0, 0.0);
    out.components << n * inv * (sigma_p * chi), n * chi;
  }
  return out;
}

/// sqrt(m/E) u exp(-i p.x) for positive frequency, sqrt(m/E) v exp(+i p.x) for negative,
/// with p.x the light-cone pairing.
inline Eigen::Vector4cd plane_wave(const PointSector& x, const Momentum& q, int s, Frequency f,
                                   const Vec3& time_direction = kDefaultTimeDirection) {
  const double phase = bilinear_form(lightcone_momentum(q, time_direction), x);
  const double norm = std::sqrt(q.mass / q.energy);
  if (f == Frequency::positive) {
    return norm * std::exp(cplx{0.0, -phase}) * dirac_spinor(q, s, SpinorKind::u).components;
  }
  return norm * std::exp(cplx{0.0, phase}) * dirac_spinor(q, s, SpinorKind::v).components;
}

using Profile = std::function<cplx(const PointSector&)>;
using ComponentVector = std::array<cplx, 3>;
using ChartVector = Eigen::Matrix<cplx, kChartDim, 1>;

/// Chart slot of component alpha (1..3) of a sector.
inline int chart_slot(Sector s, int alpha) { return flatten({sector_lambda(s), sector_mu(s), alpha}); }

/// Mode wave function: component alpha at x is weight_alpha * x^(mu, alpha) * profile(x), with the
/// plus branch for mu = 1 sectors and the minus branch for mu = 2.
struct WaveFunctionF {
  ModeIndex mode;
  ComponentVector weights{cplx{1.0}, cplx{1.0}, cplx{1.0}};
  Profile profile;

  Branch branch() const { return sector_mu(mode.sector) == 1 ? Branch::plus : Branch::minus; }

  ComponentVector operator()(const PointSector& x) const {
    ComponentVector out{};
    const cplx psi = profile ? profile(x) : cplx{};
    const auto& coord = x.branch(branch());
    for (std::size_t a = 0; a < 3; ++a) out[a] = weights[a] * coord[a] * psi;
    return out;
  }

  /// sum_alpha e_alpha Phi_alpha.
  cplx contracted(const PointSector& x) const {
    const auto c = (*this)(x);
    return c[0] + c[1] + c[2];
  }

  /// Components placed at the chart slots of the mode's sector, zero elsewhere.
  ChartVector embedded(const PointSector& x) const {
    ChartVector v = ChartVector::Zero();
    const auto c = (*this)(x);
    for (int a = 1; a <= 3; ++a) v(chart_slot(mode.sector, a)) = c[static_cast<std::size_t>(a - 1)];
    return v;
  }
};

inline WaveFunctionF make_F(const ModeIndex& mode, const ComponentVector& weights, Profile profile) {
  return WaveFunctionF{mode, weights, std::move(profile)};
}

using WaveFunctionSet = std::map<ModeIndex, WaveFunctionF>;
using AmplitudeVector = std::map<ModeIndex, cplx>;

inline const WaveFunctionF& lookup(const WaveFunctionSet& fs, const ModeIndex& m) {
  auto it = fs.find(m);
  if (it == fs.end()) throw ShapeError("no wave function for mode " + to_string(m));
  return it->second;
}

/// <chi0|| Phi(x) ||chi> = sum_r c(r) F_r(x), in chart slots.
inline ChartVector field_matrix_element(const AmplitudeVector& c, const WaveFunctionSet& fs, const PointSector& x) {
  ChartVector out = ChartVector::Zero();
  for (const auto& [mode, amp] : c) out += amp * lookup(fs, mode).embedded(x);
  return out;
}

/// One-particle amplitudes c(r) of a superposition: the coefficient of the state holding
/// exactly mode r, summed over base flags.
inline AmplitudeVector one_particle_amplitudes(const StateVector& chi) {
  AmplitudeVector out;
  for (const auto& [state, amp] : chi.terms()) {
    if (state.particles() != 1) continue;
    for (Sector s : kSectors) {
      const auto bits = state.occ[index_of(s)];
      if (bits == 0) continue;
      out[{s, std::countr_zero(bits) + 1}] += amp;
    }
  }
  return out;
}

inline double inv_sqrt_factorial(std::size_t n) {
  return 1.0 / std::sqrt(std::tgamma(static_cast<double>(n) + 1.0));
}

/// Values F_{r_j}(x_i) for an n-point matrix element, computed once.
class SlaterGrid {
 public:
  SlaterGrid(std::span<const PointSector> points, std::span<const ModeIndex> modes, const WaveFunctionSet& fs) {
    if (points.empty()) throw ShapeError("n-point matrix element needs n >= 1");
    if (points.size() != modes.size()) {
      throw ShapeError(std::to_string(points.size()) + " points but " + std::to_string(modes.size()) + " modes");
    }
    n_ = points.size();
    values_.reserve(n_ * n_);
    contracted_.reserve(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const auto& f = lookup(fs, modes[j]);
        values_.push_back(f.embedded(points[i]));
        contracted_.push_back(f.contracted(points[i]));
      }
    }
  }

  std::size_t size() const { return n_; }

  /// det || F_{r_j}(x_i)[slot_i] ||, rows indexed by points.
  cplx determinant(std::span<const int> slots) const {
    if (slots.size() != n_) throw ShapeError("component multi-index has wrong length");
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    for (std::size_t i = 0; i < n_; ++i) {
      if (slots[i] < 0 || slots[i] >= kChartDim) throw RangeError("chart slot out of range");
      for (std::size_t j = 0; j < n_; ++j) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values_[i * n_ + j](slots[i]);
      }
    }
    return m.determinant();
  }

  cplx contracted_determinant() const {
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = contracted_[i * n_ + j];
      }
    }
    return m.determinant();
  }

 private:
  std::size_t n_ = 0;
  std::vector<ChartVector> values_;
  std::vector<cplx> contracted_;
};

/// (1/sqrt(n!)) c det || F_{r_j}(x_i) || at a fixed component multi-index (chart slots, one
/// per point).
inline cplx slater_matrix_element(std::span<const PointSector> points, std::span<const ModeIndex> modes,
                                  cplx amplitude, const WaveFunctionSet& fs, std::span<const int> slots) {
  const SlaterGrid grid(points, modes, fs);
  return inv_sqrt_factorial(grid.size()) * amplitude * grid.determinant(slots);
}

/// Variant with the alpha-contracted scalar F_r = sum_alpha e_alpha Phi_alpha as entries.
inline cplx slater_matrix_element_contracted(std::span<const PointSector> points, std::span<const ModeIndex> modes,
                                             cplx amplitude, const WaveFunctionSet& fs) {
  const SlaterGrid grid(points, modes, fs);
  return inv_sqrt_factorial(grid.size()) * amplitude * grid.contracted_determinant();
}

using ChartMatrix = Eigen::Matrix<cplx, kChartDim, kChartDim>;

/// sum_{r,r'} c(r) c*(r') F_r(x) (F_{r'}(x'))^*, as a chart-slot matrix.
inline ChartMatrix pair_correlator(const AmplitudeVector& c, const WaveFunctionSet& fs, const PointSector& x,
                                   const PointSector& x_prime) {
  const ChartVector left = field_matrix_element(c, fs, x);
  const ChartVector right = field_matrix_element(c, fs, x_prime);
  return left * right.adjoint();
}

inline cplx pair_correlator_contracted(const AmplitudeVector& c, const WaveFunctionSet& fs, const PointSector& x,
                                       const PointSector& x_prime) {
  cplx left{};
  cplx right{};
  for (const auto& [mode, amp] : c) {
    const auto& f = lookup(fs, mode);
    left += amp * f.contracted(x);
    right += std::conj(amp) * std::conj(f.contracted(x_prime));
  }
  return left * right;
}

}  // namespace fermifold
