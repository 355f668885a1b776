#include "selftest.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <vector>

#include "sampling.hpp"

namespace fermifold::cli {

namespace {

struct Scale {
  int max_modes = 10;
  int max_dim = 6;
  int samples = 1000;
  int expressions = 200;
  std::size_t max_slater = 4;
};

struct Check {
  bool passed = true;
  std::string detail;
};

/// Running maximum deviation against a bound.
struct Deviation {
  double worst = 0.0;
  std::size_t count = 0;

  void add(double d) {
    worst = std::max(worst, std::isnan(d) ? std::numeric_limits<double>::infinity() : d);
    ++count;
  }

  Check within(double bound, const std::string& what = "samples") const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s=%zu max_dev=%.3e bound=%.0e", what.c_str(), count, worst, bound);
    return {worst <= bound, buf};
  }
};

std::vector<SectorConfig> configs_up_to(int max_total) {
  std::vector<SectorConfig> out;
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 3; ++b) {
      for (int c = 0; c <= 3; ++c) {
        for (int d = 0; d <= 3; ++d) {
          if (a + b + c + d <= max_total) out.push_back(make_config(a, b, c, d));
        }
      }
    }
  }
  return out;
}

SectorConfig random_config(Sampler& rng, int max_total) {
  const auto all = configs_up_to(max_total);
  SectorConfig cfg;
  do {
    cfg = all[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(all.size()) - 1))];
  } while (cfg.total() == 0);
  return cfg;
}

double int_max_abs(const IntMatrix& m) {
  int best = 0;
  for (std::ptrdiff_t k = 0; k < m.outerSize(); ++k) {
    for (IntMatrix::InnerIterator it(m, k); it; ++it) best = std::max(best, std::abs(it.value()));
  }
  return best;
}

Check chart_round_trip(Sampler& rng, const Scale& s) {
  Deviation dev;
  for (int n = 0; n < s.samples; ++n) {
    PointZ z{};
    for (auto& v : z) v = rng.uniform(-2.0, 2.0);
    const auto back = from_lightcone(to_lightcone(z));
    for (std::size_t i = 0; i < z.size(); ++i) dev.add(std::abs(back[i] - z[i]));
    const auto p = rng.point_sector();
    const auto q = minkowski_join(minkowski_split(p));
    for (std::size_t a = 0; a < 3; ++a) dev.add(std::max(std::abs(q.plus[a] - p.plus[a]), std::abs(q.minus[a] - p.minus[a])));
  }
  for (int f = 0; f < kChartDim; ++f) dev.add(flatten(unflatten(f)) == f ? 0.0 : 1.0);
  return dev.within(1e-12);
}

Check anticommutators(Sampler&, const Scale& s) {
  Deviation dev;
  for (const auto& cfg : configs_up_to(s.max_modes)) {
    const auto modes = all_modes(cfg);
    const IntMatrix id = dense_identity(cfg);
    std::vector<IntMatrix> b;
    std::vector<IntMatrix> bd;
    for (const auto& m : modes) {
      b.push_back(dense_matrix(cfg, annihilator(m.sector, m.serial)));
      bd.push_back(dense_matrix(cfg, creator(m.sector, m.serial)));
    }
    for (std::size_t i = 0; i < modes.size(); ++i) {
      for (std::size_t j = 0; j < modes.size(); ++j) {
        if (modes[i].sector == modes[j].sector) {
          IntMatrix mixed = b[i] * bd[j] + bd[j] * b[i];
          if (i == j) mixed -= id;
          dev.add(int_max_abs(mixed));
          dev.add(int_max_abs(IntMatrix(b[i] * b[j] + b[j] * b[i])));
        } else {
          dev.add(int_max_abs(IntMatrix(b[i] * bd[j] - bd[j] * b[i])));
          dev.add(int_max_abs(IntMatrix(b[i] * b[j] - b[j] * b[i])));
        }
      }
    }
  }
  return dev.within(0.0, "relations");
}

Check sign_rule(Sampler& rng, const Scale& s) {
  Deviation dev;
  for (const auto& cfg : configs_up_to(s.max_modes)) {
    for (const auto& m : all_modes(cfg)) {
      for (const auto& g : {creator(m.sector, m.serial), annihilator(m.sector, m.serial)}) {
        dev.add(int_max_abs(IntMatrix(fast_path_matrix(cfg, g) - dense_matrix(cfg, g))));
      }
    }
    if (cfg.total() == 0) continue;
    const auto modes = all_modes(cfg);
    for (int trial = 0; trial < 8; ++trial) {
      const auto ket = basis_state_at(cfg, static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(basis_size(cfg)) - 1)));
      const auto& m = modes[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(modes.size()) - 1))];
      const Generator g{occupation(ket, m) ? Action::annihilate : Action::create, m};
      const auto bra = apply(g, ket)->state;
      const auto direct = operator_string_matrix_element(ordered_product_state(bra), {g}, ordered_product_state(ket));
      dev.add(std::abs(direct - static_cast<double>(regulated_set_element(bra, g, ket))));
    }
  }
  return dev.within(0.0, "elements");
}

Check exclusion(Sampler& rng, const Scale& s) {
  Deviation dev;
  for (int c = 0; c < 12; ++c) {
    const auto cfg = random_config(rng, s.max_modes);
    for (std::size_t idx = 0; idx < basis_size(cfg); ++idx) {
      const StateVector v(basis_state_at(cfg, idx));
      for (const auto& m : all_modes(cfg)) {
        const auto n = operator_string_matrix_element(v, {creator(m.sector, m.serial), annihilator(m.sector, m.serial)}, v);
        const bool binary = n == cplx{0.0} || n == cplx{1.0};
        dev.add(binary && n.real() == occupation(v.terms().begin()->first, m) ? 0.0 : 1.0);
      }
    }
  }
  return dev.within(0.0, "expectations");
}

Check normalization(Sampler& rng, const Scale& s) {
  Deviation dev;
  for (int n = 0; n < 100; ++n) {
    const auto cfg = random_config(rng, s.max_modes);
    StateVector chi(cfg);
    double expected = 0.0;
    const int terms = rng.uniform_int(1, 8);
    std::vector<std::size_t> used;
    for (int t = 0; t < terms; ++t) {
      const auto idx = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(basis_size(cfg)) - 1));
      const cplx c = rng.complex();
      if (std::find(used.begin(), used.end(), idx) != used.end()) continue;
      used.push_back(idx);
      StateVector part = ordered_product_state(basis_state_at(cfg, idx));
      part *= c;
      chi += part;
      expected += std::norm(c);
    }
    dev.add(std::abs(inner_product(chi, chi).real() - expected) / std::max(1.0, expected));
  }
  return dev.within(1e-14, "superpositions");
}

struct ExpressionSample {
  SectorConfig cfg;
  OperatorExpr expr;
};

std::vector<ExpressionSample> expression_samples(Sampler& rng, const Scale& s) {
  std::vector<ExpressionSample> out;
  for (int n = 0; n < s.expressions; ++n) {
    const auto cfg = random_config(rng, std::min(s.max_modes, 8));
    out.push_back({cfg, rng.expression(cfg, 6, 3)});
  }
  return out;
}

Check normal_order_soundness(Sampler& rng, const Scale& s) {
  Deviation dev;
  std::size_t steps = 0;
  for (const auto& [cfg, e] : expression_samples(rng, s)) {
    const auto nf = normal_order(e);
    steps = std::max(steps, nf.steps);
    dev.add(max_abs_difference(e, nf.expr, cfg));
    for (const auto& t : nf.expr.terms()) dev.add(is_canonical(t.gens) ? 0.0 : 1.0);
    dev.add(normal_order(nf.expr).expr == nf.expr ? 0.0 : 1.0);
  }
  auto c = dev.within(1e-12);
  c.detail += " max_steps=" + std::to_string(steps);
  c.passed = c.passed && steps <= kDefaultRewriteLimit;
  return c;
}

Check print_round_trip(Sampler& rng, const Scale& s) {
  Deviation dev;
  for (const auto& [cfg, e] : expression_samples(rng, s)) {
    dev.add(parse(to_string(e), cfg) == e ? 0.0 : 1.0);
    const auto canonical = normal_order(e).expr;
    dev.add(parse(to_string(canonical), cfg) == canonical ? 0.0 : 1.0);
  }
  return dev.within(0.0, "expressions");
}

Check vacuum_expectation(Sampler& rng, const Scale& s) {
  Deviation dev;
  for (const auto& [cfg, e] : expression_samples(rng, s)) {
    const StateVector vac(vacuum(cfg));
    dev.add(std::abs(vev(e) - inner_product(vac, apply(e, vac))));
  }
  return dev.within(1e-12, "expressions");
}

Momentum random_momentum(Sampler& rng) {
  const auto p = rng.vec3(3.0);
  return mass_shell(p, rng.uniform(0.2, 3.0));
}

Check mass_shell_property(Sampler& rng, const Scale& s) {
  Deviation dev;
  for (int n = 0; n < s.samples; ++n) {
    const auto q = random_momentum(rng);
    const double m2 = q.mass * q.mass;
    dev.add(std::abs(q.energy * q.energy - dot3(q.p3, q.p3) - m2) / m2);
    dev.add(std::abs(quadratic_form(lightcone_momentum(q)) - m2) / m2);
  }
  return dev.within(1e-10, "momenta");
}

Check spinor_orthonormality(Sampler& rng, const Scale& s) {
  Deviation dev;
  for (int n = 0; n < s.samples; ++n) {
    const auto q = random_momentum(rng);
    for (int a : {1, -1}) {
      for (int b : {1, -1}) {
        const double delta = a == b ? 1.0 : 0.0;
        const auto ua = dirac_spinor(q, a, SpinorKind::u).components;
        const auto ub = dirac_spinor(q, b, SpinorKind::u).components;
        const auto va = dirac_spinor(q, a, SpinorKind::v).components;
        const auto vb = dirac_spinor(q, b, SpinorKind::v).components;
        dev.add(std::abs(dirac_bar(ua, ub) - delta));
        dev.add(std::abs(dirac_bar(va, vb) + delta));
        dev.add(std::abs(dirac_bar(ua, vb)));
      }
    }
  }
  return dev.within(1e-10, "pairings");
}

WaveFunctionSet random_wave_functions(Sampler& rng, const std::vector<ModeIndex>& modes) {
  WaveFunctionSet fs;
  for (const auto& m : modes) {
    const cplx w0 = rng.complex();
    const cplx w1 = rng.complex();
    const cplx w2 = rng.complex();
    const double k = rng.uniform(-1.0, 1.0);
    fs.emplace(m, make_F(m, {w0, w1, w2}, [k](const PointSector& x) {
                 return std::exp(cplx{0.0, k * (x.plus[0] - x.minus[1])});
               }));
  }
  return fs;
}

Check field_consistency(Sampler& rng, const Scale&) {
  Deviation dev;
  for (const auto& cfg : configs_up_to(4)) {
    const auto modes = all_modes(cfg);
    const auto fs = random_wave_functions(rng, modes);
    StateVector chi(cfg);
    for (std::size_t i = 0; i < basis_size(cfg); ++i) chi.add(basis_state_at(cfg, i), rng.complex());
    const StateVector vac(vacuum(cfg));
    const auto x = rng.point_sector();
    ChartVector fock_level = ChartVector::Zero();
    for (const auto& m : modes) {
      fock_level += operator_string_matrix_element(vac, {annihilator(m.sector, m.serial)}, chi) * fs.at(m).embedded(x);
    }
    dev.add((fock_level - field_matrix_element(one_particle_amplitudes(chi), fs, x)).cwiseAbs().maxCoeff());
  }
  return dev.within(1e-12, "configs");
}

/// (1/sqrt(n!)) c sum_sigma sgn(sigma) prod_i F_{r_sigma(i)}(x_i)[slot_i].
cplx permutation_sum(std::span<const PointSector> pts, std::span<const ModeIndex> modes, cplx c,
                     const WaveFunctionSet& fs, std::span<const int> slots) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  cplx acc{};
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
    }
    cplx prod{inversions % 2 ? -1.0 : 1.0};
    for (std::size_t i = 0; i < n; ++i) prod *= fs.at(modes[perm[i]]).embedded(pts[i])(slots[i]);
    acc += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return c * acc * inv_sqrt_factorial(n);
}

Check slater_antisymmetry(Sampler& rng, const Scale& s) {
  Deviation dev;
  const std::vector<ModeIndex> pool{{Sector::s11, 1}, {Sector::s11, 2}, {Sector::s12, 1}, {Sector::s21, 1}};
  const auto fs = random_wave_functions(rng, pool);
  for (std::size_t n = 2; n <= s.max_slater; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<PointSector> pts;
      for (std::size_t i = 0; i < n; ++i) pts.push_back(rng.point_sector());
      const std::vector<ModeIndex> modes(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
      std::vector<int> slots;
      for (std::size_t i = 0; i < n; ++i) slots.push_back(rng.uniform_int(0, kChartDim - 1));
      const cplx c = rng.complex();
      const auto v = slater_matrix_element(pts, modes, c, fs, slots);
      dev.add(std::abs(v - permutation_sum(pts, modes, c, fs, slots)));
      auto swapped = pts;
      auto swapped_slots = slots;
      std::swap(swapped[0], swapped[1]);
      std::swap(swapped_slots[0], swapped_slots[1]);
      dev.add(std::abs(slater_matrix_element(swapped, modes, c, fs, swapped_slots) + v));
      auto repeated = pts;
      repeated[1] = repeated[0];
      dev.add(std::abs(slater_matrix_element_contracted(repeated, modes, c, fs)));
      auto same_modes = modes;
      same_modes[1] = same_modes[0];
      dev.add(std::abs(slater_matrix_element(pts, same_modes, c, fs, slots)));
    }
  }
  return dev.within(1e-12);
}

std::vector<Point> sample_points(Sampler& rng, int dim, int count) {
  std::vector<Point> out;
  for (int i = 0; i < count; ++i) out.push_back(rng.point(dim));
  return out;
}

Check dd_zero(Sampler& rng, const Scale& s) {
  Deviation dev;
  for (int dim = 2; dim <= s.max_dim; ++dim) {
    for (int k = 0; k + 2 <= dim; ++k) {
      const auto form = rng.form(dim, k, 4);
      const auto pts = sample_points(rng, dim, 5);
      dev.add(max_abs_coefficient(exterior_derivative(exterior_derivative(form)), std::span<const Point>(pts)));
    }
  }
  return dev.within(1e-6, "forms");
}

SmoothMap random_quadratic_map(Sampler& rng, int dim) {
  std::vector<Coefficient<double>> comps;
  for (int i = 0; i < dim; ++i) {
    auto p = rng.polynomial(dim, 2, 3);
    p += Polynomial<double>::variable(dim, i);
    comps.emplace_back(std::move(p));
  }
  return SmoothMap(dim, std::move(comps));
}

Check pullback_commutes_with_d(Sampler& rng, const Scale& s) {
  Deviation dev;
  for (int dim = 1; dim <= s.max_dim; ++dim) {
    for (int k = 0; k < dim; ++k) {
      const auto form = rng.form(dim, k, 2);
      const auto f = random_quadratic_map(rng, dim);
      const auto lhs = pullback(f, exterior_derivative(form));
      const auto rhs = exterior_derivative(pullback(f, form));
      const auto pts = sample_points(rng, dim, 3);
      dev.add(max_abs_coefficient(lhs - rhs, std::span<const Point>(pts)));
    }
  }
  return dev.within(1e-5, "pairs");
}

Check determinant_law(Sampler& rng, const Scale& s) {
  Deviation dev;
  for (int dim = 1; dim <= s.max_dim; ++dim) {
    IndexTuple all(static_cast<std::size_t>(dim));
    std::iota(all.begin(), all.end(), 0);
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::MatrixXd l(dim, dim);
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) l(i, j) = rng.uniform(-2.0, 2.0);
      }
      const auto pulled = pullback(SmoothMap::linear(l), FormK::basis(dim, all));
      const Point x = rng.point(dim);
      dev.add(std::abs(pulled.coefficient_at(all, x) - l.determinant()));
    }
  }
  return dev.within(1e-8, "maps");
}

Check integration(Sampler& rng, const Scale&) {
  Deviation dev;
  const FormK area = FormK::basis(2, {0, 1});
  Chain unit;
  unit.add({Box::unit(2), SmoothMap::identity(2), 1, 1});
  const double one = integrate(area, unit).value;
  dev.add(std::abs(one - 1.0));
  for (int trial = 0; trial < 10; ++trial) {
    const auto form = rng.form(2, 2, 3);
    Chain base;
    base.add({Box::unit(2), SmoothMap::identity(2), 1, 1});
    Chain flipped;
    flipped.add({Box::unit(2), SmoothMap::identity(2), -1, 1});
    Chain doubled;
    doubled.add({Box::unit(2), SmoothMap::identity(2), 1, 2});
    const double v = integrate(form, base).value;
    dev.add(std::abs(integrate(form, flipped).value + v));
    dev.add(std::abs(integrate(form, doubled).value - 2.0 * v));
  }
  return dev.within(1e-10, "integrals");
}

Check lie_flow_limit(Sampler& rng, const Scale& s) {
  Deviation dev;
  for (int dim = 1; dim <= std::min(s.max_dim, 4); ++dim) {
    for (int k = 0; k <= dim; ++k) {
      const auto form = rng.form(dim, k, 2);
      std::vector<Coefficient<double>> comps;
      for (int i = 0; i < dim; ++i) comps.emplace_back(rng.polynomial(dim, 2, 2));
      const VectorField a(std::move(comps));
      const auto cartan = cartan_lie_form(a, form);
      const Point x = rng.point(dim, 0.5);
      for (const auto& [idx, v] : lie_form_at(a, form, x)) dev.add(std::abs(v - cartan.coefficient_at(idx, x)));
    }
  }
  return dev.within(1e-4, "coefficients");
}

struct Property {
  const char* name;
  std::function<Check(Sampler&, const Scale&)> run;
};

}  // namespace

SelftestOutcome run_selftest(const SelftestOptions& options) {
  const Scale scale = options.quick ? Scale{6, 4, 200, 50, 3} : Scale{};
  const std::vector<Property> properties{
      {"grading.chart-round-trip", chart_round_trip},
      {"fock.anticommutators", anticommutators},
      {"fock.sign-rule", sign_rule},
      {"fock.exclusion", exclusion},
      {"fock.normalization", normalization},
      {"opalg.normal-order", normal_order_soundness},
      {"opalg.print-round-trip", print_round_trip},
      {"opalg.vacuum-expectation", vacuum_expectation},
      {"fields.mass-shell", mass_shell_property},
      {"fields.spinor-orthonormality", spinor_orthonormality},
      {"fields.fock-consistency", field_consistency},
      {"fields.slater-antisymmetry", slater_antisymmetry},
      {"extgeo.dd-zero", dd_zero},
      {"extgeo.pullback-d", pullback_commutes_with_d},
      {"extgeo.determinant-law", determinant_law},
      {"extgeo.integration", integration},
      {"extgeo.lie-flow-limit", lie_flow_limit},
  };
  std::ostringstream out;
  out << "selftest seed=" << options.seed << " scale=" << (options.quick ? "quick" : "full")
      << " max_modes=" << scale.max_modes << " max_dim=" << scale.max_dim << "\n";
  SelftestOutcome outcome;
  std::size_t passed = 0;
  for (std::size_t i = 0; i < properties.size(); ++i) {
    Sampler rng(options.seed * 0x9E3779B97F4A7C15ULL + i);
    Check c;
    try {
      spdlog::debug("selftest property {}", properties[i].name);
      c = properties[i].run(rng, scale);
    } catch (const std::exception& e) {
      c = {false, std::string("exception: ") + e.what()};
    }
    out << (c.passed ? "PASS " : "FAIL ") << properties[i].name << " " << c.detail << "\n";
    if (c.passed) ++passed;
  }
  outcome.all_passed = passed == properties.size();
  out << "summary: " << passed << " passed, " << properties.size() - passed << " failed\n";
  outcome.report = out.str();
  return outcome;
}

}  // namespace fermifold::cli
