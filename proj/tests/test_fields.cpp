#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <vector>

#include "support.hpp"

using namespace fermifold;
using Catch::Matchers::WithinAbs;

namespace {

Vec3 random_vec3(double scale) {
  return {testing::uniform(-scale, scale), testing::uniform(-scale, scale), testing::uniform(-scale, scale)};
}

Momentum random_momentum() { return mass_shell(random_vec3(5.0), testing::uniform(0.1, 3.0)); }

/// Profiles with distinct, non-trivial dependence on the point.
Profile profile_for(int seed) {
  return [seed](const PointSector& x) {
    const double s = seed;
    return cplx{std::cos(s + x.plus[0] - 0.5 * x.minus[1]), std::sin(0.3 * s + x.minus[2] + x.plus[1])};
  };
}

WaveFunctionSet make_set(const std::vector<ModeIndex>& modes) {
  WaveFunctionSet fs;
  int seed = 1;
  for (const auto& m : modes) {
    const ComponentVector w{testing::random_complex(), testing::random_complex(), testing::random_complex()};
    fs.emplace(m, make_F(m, w, profile_for(seed++)));
  }
  return fs;
}

/// (1/sqrt(n!)) c sum_sigma sgn(sigma) prod_i F_{r_sigma(i)}(x_i)[slot_i].
cplx permutation_oracle(const std::vector<PointSector>& pts, const std::vector<ModeIndex>& modes, cplx c,
                        const WaveFunctionSet& fs, const std::vector<int>& slots) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  cplx acc{};
  do {
    int sign = 1;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (perm[a] > perm[b]) sign = -sign;
      }
    }
    cplx prod{static_cast<double>(sign)};
    for (std::size_t i = 0; i < n; ++i) prod *= fs.at(modes[perm[i]]).embedded(pts[i])(slots[i]);
    acc += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  double fact = 1.0;
  for (std::size_t k = 2; k <= n; ++k) fact *= static_cast<double>(k);
  return c * acc / std::sqrt(fact);
}

}  // namespace

TEST_CASE("mass shell", "[fields]") {
  const auto rest = mass_shell({0, 0, 0}, 2.0);
  CHECK(rest.energy == 2.0);
  CHECK_THAT(mass_shell({3, 0, 0}, 1.0).energy, WithinAbs(std::sqrt(10.0), 1e-15));
  CHECK_THROWS_AS(mass_shell({0, 0, 0}, 0.0), DomainError);
  CHECK_THROWS_AS(mass_shell({0, 0, 0}, -1.0), DomainError);
  for (int n = 0; n < 100; ++n) {
    const auto q = random_momentum();
    CHECK_THAT(q.energy * q.energy - dot3(q.p3, q.p3) - q.mass * q.mass, WithinAbs(0.0, 1e-12));
    CHECK(q.energy >= q.mass);
  }
}

TEST_CASE("light-cone momentum", "[fields]") {
  const auto rest = lightcone_momentum(mass_shell({0, 0, 0}, 1.5));
  CHECK_THAT(rest.plus[0], WithinAbs(1.5 / std::sqrt(2.0), 1e-15));
  CHECK_THAT(rest.minus[0], WithinAbs(1.5 / std::sqrt(2.0), 1e-15));
  CHECK(rest.plus[1] == 0.0);
  CHECK(rest.minus[2] == 0.0);
  CHECK_THROWS_AS(lightcone_momentum(mass_shell({0, 0, 0}, 1.0), {1, 1, 0}), DomainError);

  for (int n = 0; n < 100; ++n) {
    const auto q = random_momentum();
    Vec3 d = random_vec3(1.0);
    const double len = std::sqrt(dot3(d, d));
    for (auto& v : d) v /= len;
    const auto p = lightcone_momentum(q, d);
    CHECK_THAT(quadratic_form(p), WithinAbs(q.mass * q.mass, 1e-10));
    const auto back = momentum_from_lightcone(p, d);
    for (std::size_t a = 0; a < 3; ++a) CHECK_THAT(back.p3[a], WithinAbs(q.p3[a], 1e-12));
    CHECK_THAT(back.energy, WithinAbs(q.energy, 1e-12));
  }
}

TEST_CASE("Dirac spinors are orthonormal", "[fields]") {
  const auto u0 = dirac_spinor(mass_shell({0, 0, 0}, 1.0), 1, SpinorKind::u);
  CHECK(u0.components == Eigen::Vector4cd(1, 0, 0, 0));
  CHECK_THROWS_AS(dirac_spinor(mass_shell({0, 0, 0}, 1.0), 0, SpinorKind::u), DomainError);
  for (int n = 0; n < 1000; ++n) {
    const auto q = random_momentum();
    for (int s : {1, -1}) {
      for (int t : {1, -1}) {
        const auto us = dirac_spinor(q, s, SpinorKind::u).components;
        const auto ut = dirac_spinor(q, t, SpinorKind::u).components;
        const auto vs = dirac_spinor(q, s, SpinorKind::v).components;
        const auto vt = dirac_spinor(q, t, SpinorKind::v).components;
        const double delta = s == t ? 1.0 : 0.0;
        REQUIRE(std::abs(dirac_bar(us, ut) - delta) < 1e-12);
        REQUIRE(std::abs(dirac_bar(vs, vt) + delta) < 1e-12);
        REQUIRE(std::abs(dirac_bar(us, vt)) < 1e-12);
      }
    }
  }
}

TEST_CASE("plane waves", "[fields]") {
  const auto q = random_momentum();
  const double norm = std::sqrt(q.mass / q.energy);
  const auto at0 = plane_wave(PointSector{}, q, 1, Frequency::positive);
  CHECK((at0 - norm * dirac_spinor(q, 1, SpinorKind::u).components).norm() < 1e-15);
  for (int n = 0; n < 50; ++n) {
    const auto x = testing::random_sector_point(3.0);
    const auto pos = plane_wave(x, q, -1, Frequency::positive);
    CHECK_THAT(pos.norm(), WithinAbs(norm * dirac_spinor(q, -1, SpinorKind::u).components.norm(), 1e-12));

    const auto pl = lightcone_momentum(q);
    double px = 0.0;
    for (std::size_t a = 0; a < 3; ++a) px += pl.plus[a] * x.minus[a] + pl.minus[a] * x.plus[a];
    const cplx expected_phase{std::cos(px), std::sin(px)};
    const auto neg = plane_wave(x, q, 1, Frequency::negative);
    const Eigen::Vector4cd oracle = norm * expected_phase * dirac_spinor(q, 1, SpinorKind::v).components;
    CHECK((neg - oracle).norm() < 1e-12);
    const Eigen::Vector4cd oracle_pos = norm * std::conj(expected_phase) * dirac_spinor(q, -1, SpinorKind::u).components;
    CHECK((pos - oracle_pos).norm() < 1e-12);
  }
}

TEST_CASE("F wave functions", "[fields]") {
  const ModeIndex m{Sector::s12, 1};
  const auto zero = make_F(m, {1, 1, 1}, [](const PointSector&) { return cplx{}; });
  const auto x = testing::random_sector_point();
  for (const auto& c : zero(x)) CHECK(c == cplx{});

  const auto unit = make_F(m, {1, 1, 1}, [](const PointSector&) { return cplx{1.0}; });
  const auto comps = unit(x);
  for (std::size_t a = 0; a < 3; ++a) CHECK(comps[a] == cplx{x.minus[a]});
  const auto m11 = make_F({Sector::s11, 1}, {1, 1, 1}, [](const PointSector&) { return cplx{1.0}; });
  for (std::size_t a = 0; a < 3; ++a) CHECK(m11(x)[a] == cplx{x.plus[a]});

  const auto f = make_F(m, {1, 2, 3}, profile_for(3));
  const auto g = make_F(m, {1, 2, 3}, profile_for(5));
  const auto sum = make_F(m, {1, 2, 3}, [](const PointSector& p) { return 2.0 * profile_for(3)(p) + profile_for(5)(p); });
  for (std::size_t a = 0; a < 3; ++a) CHECK(std::abs(sum(x)[a] - (2.0 * f(x)[a] + g(x)[a])) < 1e-14);

  const auto v = f.embedded(x);
  for (int a = 1; a <= 3; ++a) CHECK(v(chart_slot(Sector::s12, a)) == f(x)[static_cast<std::size_t>(a - 1)]);
  CHECK(v(0) == cplx{});
}

TEST_CASE("field matrix elements", "[fields]") {
  const std::vector<ModeIndex> modes{{Sector::s11, 1}, {Sector::s11, 2}, {Sector::s21, 1}};
  const auto fs = make_set(modes);
  const auto x = testing::random_sector_point();
  CHECK((field_matrix_element({{modes[0], 1.0}}, fs, x) - fs.at(modes[0]).embedded(x)).norm() == 0.0);
  CHECK(field_matrix_element({{modes[0], 0.0}, {modes[1], 0.0}}, fs, x).isZero());
  CHECK_THROWS_AS(field_matrix_element({{{Sector::s22, 1}, 1.0}}, fs, x), ShapeError);
}

TEST_CASE("field matrix element agrees with the Fock-level evaluation", "[fields][fock]") {
  for (const auto& cfg : testing::configs_up_to(4, 4)) {
    const auto modes = all_modes(cfg);
    const auto fs = make_set(modes);
    StateVector chi(cfg);
    for (std::size_t i = 0; i < basis_size(cfg); ++i) chi.add(basis_state_at(cfg, i), testing::random_complex());
    const StateVector vac(vacuum(cfg));
    const auto x = testing::random_sector_point();

    ChartVector fock_level = ChartVector::Zero();
    for (const auto& m : modes) {
      const auto amp = operator_string_matrix_element(vac, {annihilator(m.sector, m.serial)}, chi);
      fock_level += amp * fs.at(m).embedded(x);
    }
    const auto direct = field_matrix_element(one_particle_amplitudes(chi), fs, x);
    REQUIRE((fock_level - direct).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("Slater matrix elements", "[fields][slater]") {
  const std::vector<ModeIndex> modes{{Sector::s11, 1}, {Sector::s11, 2}, {Sector::s12, 1}, {Sector::s11, 3}};
  const auto fs = make_set(modes);
  std::vector<PointSector> pts;
  for (int i = 0; i < 4; ++i) pts.push_back(testing::random_sector_point());
  const cplx c{0.7, -0.2};

  SECTION("one point reduces to the field element") {
    const std::vector<int> slot{1};
    const auto v = slater_matrix_element(std::span(pts).first(1), std::span(modes).first(1), c, fs, slot);
    CHECK(std::abs(v - c * fs.at(modes[0]).embedded(pts[0])(1)) < 1e-15);
  }

  SECTION("permutation sums for n = 2, 3, 4") {
    for (std::size_t n = 2; n <= 4; ++n) {
      const std::vector<PointSector> p(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(n));
      const std::vector<ModeIndex> m(modes.begin(), modes.begin() + static_cast<std::ptrdiff_t>(n));
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> slots;
        for (std::size_t i = 0; i < n; ++i) slots.push_back(testing::uniform_int(0, 5));
        const auto v = slater_matrix_element(p, m, c, fs, slots);
        REQUIRE(std::abs(v - permutation_oracle(p, m, c, fs, slots)) < 1e-12);
      }
    }
  }

  SECTION("antisymmetry and vanishing") {
    const std::vector<int> slots{0, 1, 6, 2};
    const std::vector<int> same_slot{0, 0, 0, 0};
    const auto base = slater_matrix_element(pts, modes, c, fs, same_slot);
    auto swapped_modes = modes;
    std::swap(swapped_modes[0], swapped_modes[2]);
    CHECK(std::abs(slater_matrix_element(pts, swapped_modes, c, fs, same_slot) + base) < 1e-12);
    auto swapped_pts = pts;
    std::swap(swapped_pts[1], swapped_pts[3]);
    CHECK(std::abs(slater_matrix_element(swapped_pts, modes, c, fs, same_slot) + base) < 1e-12);

    auto repeated_pts = pts;
    repeated_pts[2] = repeated_pts[0];
    CHECK(std::abs(slater_matrix_element(repeated_pts, modes, c, fs, same_slot)) < 1e-12);
    auto repeated_modes = modes;
    repeated_modes[3] = repeated_modes[1];
    CHECK(std::abs(slater_matrix_element(pts, repeated_modes, c, fs, slots)) < 1e-12);

    const auto contracted = slater_matrix_element_contracted(pts, modes, c, fs);
    CHECK(std::abs(slater_matrix_element_contracted(swapped_pts, modes, c, fs) + contracted) < 1e-12);
  }

  CHECK_THROWS_AS(slater_matrix_element(std::span(pts).first(2), std::span(modes).first(3), c, fs, std::vector<int>{0, 1}), ShapeError);
  CHECK_THROWS_AS(slater_matrix_element(std::span(pts).first(0), std::span(modes).first(0), c, fs, std::vector<int>{}), ShapeError);
}

TEST_CASE("pair correlator", "[fields]") {
  const std::vector<ModeIndex> modes{{Sector::s11, 1}, {Sector::s22, 1}};
  const auto fs = make_set(modes);
  const auto x = testing::random_sector_point();
  const auto y = testing::random_sector_point();

  const auto single = pair_correlator({{modes[0], 1.0}}, fs, x, x);
  const auto f = fs.at(modes[0]).embedded(x);
  for (int i = 0; i < kChartDim; ++i) CHECK_THAT(single(i, i).real(), WithinAbs(std::norm(f(i)), 1e-14));
  CHECK(pair_correlator({{modes[0], 0.0}}, fs, x, y).isZero());

  const AmplitudeVector c{{modes[0], {0.3, 0.4}}, {modes[1], {-1.1, 0.2}}};
  const auto value = pair_correlator(c, fs, x, y);
  ChartMatrix oracle = ChartMatrix::Zero();
  for (const auto& [r, cr] : c) {
    for (const auto& [rp, crp] : c) {
      const auto fr = fs.at(r).embedded(x);
      const auto frp = fs.at(rp).embedded(y);
      for (int a = 0; a < kChartDim; ++a) {
        for (int b = 0; b < kChartDim; ++b) oracle(a, b) += cr * std::conj(crp) * fr(a) * std::conj(frp(b));
      }
    }
  }
  CHECK((value - oracle).cwiseAbs().maxCoeff() < 1e-12);
  cplx scalar_oracle{};
  for (const auto& [r, cr] : c) {
    for (const auto& [rp, crp] : c) {
      scalar_oracle += cr * std::conj(crp) * fs.at(r).contracted(x) * std::conj(fs.at(rp).contracted(y));
    }
  }
  CHECK(std::abs(pair_correlator_contracted(c, fs, x, y) - scalar_oracle) < 1e-12);
}
