#pragma once

// Seeded sampling shared by the selftest and randomized oracle checks.

#include <fermifold/fermifold.hpp>

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace fermifold::cli {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  cplx complex() {
    const double re = uniform();
    return {re, uniform()};
  }

  Vec3 vec3(double scale = 1.0) {
    Vec3 v{};
    for (auto& c : v) c = uniform(-scale, scale);
    return v;
  }

  PointSector point_sector() {
    PointSector p;
    p.plus = vec3();
    p.minus = vec3();
    return p;
  }

  Point point(int dim, double scale = 1.0) {
    Point x(dim);
    for (int i = 0; i < dim; ++i) x(i) = uniform(-scale, scale);
    return x;
  }

  /// Small rationals with terminating decimals, so printed expressions reparse exactly.
  ExactScalar scalar() {
    static constexpr std::array<int, 4> kDenominators{1, 2, 4, 5};
    const int num = uniform_int(-4, 4);
    const Rational re(num, kDenominators[static_cast<std::size_t>(uniform_int(0, 3))]);
    const Rational im(uniform_int(0, 3) == 0 ? uniform_int(-2, 2) : 0, 1);
    if (re.numerator() == 0 && im.numerator() == 0) return ExactScalar{Rational(1), Rational(0)};
    return ExactScalar{re, im};
  }

  OperatorExpr expression(const SectorConfig& cfg, int max_generators, int max_terms) {
    const auto modes = all_modes(cfg);
    OperatorExpr e;
    const int terms = uniform_int(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      Term<ExactScalar> term{scalar(), {}};
      const int n = uniform_int(0, max_generators);
      for (int g = 0; g < n; ++g) {
        const auto& m = modes[static_cast<std::size_t>(uniform_int(0, static_cast<int>(modes.size()) - 1))];
        term.gens.push_back({uniform_int(0, 1) == 0 ? Action::create : Action::annihilate, m});
      }
      e.add(std::move(term));
    }
    return e;
  }

  Polynomial<double> polynomial(int dim, int max_degree, int terms) {
    Polynomial<double> p(dim);
    for (int t = 0; t < terms; ++t) {
      std::vector<int> e(static_cast<std::size_t>(dim), 0);
      int budget = uniform_int(0, max_degree);
      while (budget-- > 0) ++e[static_cast<std::size_t>(uniform_int(0, dim - 1))];
      p.add_monomial(e, static_cast<double>(uniform_int(-3, 3)));
    }
    return p;
  }

  FormK form(int dim, int degree, int max_degree) {
    FormK f(dim, degree);
    for (const auto& key : increasing_tuples(dim, degree)) {
      if (uniform_int(0, 2) == 0) continue;
      f.add_term(key, Coefficient<double>(polynomial(dim, max_degree, 3)));
    }
    return f;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace fermifold::cli
