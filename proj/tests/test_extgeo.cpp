#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "support.hpp"

using namespace fermifold;
using Catch::Matchers::WithinAbs;
using testing::unit;

namespace {

Coefficient<double> poly(const Polynomial<double>& p) { return Coefficient<double>(p); }
Polynomial<double> var(int dim, int i) { return Polynomial<double>::variable(dim, i); }

/// Largest coefficient difference of two forms over sample points.
template <typename T>
double form_distance(const Form<T>& a, const Form<T>& b, const std::vector<Point>& pts) {
  return max_abs_coefficient(a - b, std::span<const Point>(pts));
}

std::vector<Point> sample_points(int dim, int n, double scale = 1.0) {
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) pts.push_back(testing::random_point(dim, scale));
  return pts;
}

/// Rational sample points (dyadic), so polynomial identities hold exactly in floating point.
std::vector<Point> dyadic_points(int dim, int n) {
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) {
    Point x(dim);
    for (int j = 0; j < dim; ++j) x(j) = testing::uniform_int(-8, 8) / 8.0;
    pts.push_back(x);
  }
  return pts;
}

double det2(double a, double b, double c, double d) { return a * d - b * c; }

Eigen::MatrixXd random_matrix(int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = testing::uniform();
  }
  return m;
}

}  // namespace

TEST_CASE("evaluate pairs forms with vectors by determinants", "[extgeo][forms]") {
  const auto f = FormK::basis(3, {0, 1});
  const Point x = Point::Zero(3);
  const std::vector<Point> e01{unit(3, 0), unit(3, 1)};
  const std::vector<Point> e10{unit(3, 1), unit(3, 0)};
  CHECK(evaluate(f, std::span<const Point>(e01), x) == 1.0);
  CHECK(evaluate(f, std::span<const Point>(e10), x) == -1.0);

  for (int trial = 0; trial < 20; ++trial) {
    const auto form = testing::random_polynomial_form(4, 2, 2);
    const std::vector<Point> vs{testing::random_point(4), testing::random_point(4)};
    const Point at = testing::random_point(4);
    double oracle = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        oracle += form.coefficient_at({i, j}, at) * det2(vs[0](i), vs[1](i), vs[0](j), vs[1](j));
      }
    }
    CHECK_THAT(evaluate(form, std::span<const Point>(vs), at), WithinAbs(oracle, 1e-12));
  }
  const std::vector<Point> one{unit(3, 0)};
  CHECK_THROWS_AS(evaluate(f, std::span<const Point>(one), x), ShapeError);
}

TEST_CASE("forms normalize their keys", "[extgeo][forms]") {
  FormK f(3, 2);
  f.add_term({1, 0}, Coefficient<double>::constant(3, 2.0));
  CHECK(f.coefficient_at({0, 1}, Point::Zero(3)) == -2.0);
  f.add_term({0, 0}, Coefficient<double>::constant(3, 5.0));
  CHECK(f.terms().size() == 1);
  f.add_term({0, 1}, Coefficient<double>::constant(3, 2.0));
  CHECK(f.terms().empty());
  CHECK_THROWS_AS(f.add_term({0, 3}, Coefficient<double>::constant(3, 1.0)), RangeError);
  CHECK_THROWS_AS(f.add_term({0}, Coefficient<double>::constant(3, 1.0)), ShapeError);
  CHECK_THROWS_AS(FormK(2, 3), DegreeError);
}

TEST_CASE("wedge product", "[extgeo][forms]") {
  const auto dx0 = FormK::basis(3, {0});
  const auto dx1 = FormK::basis(3, {1});
  const auto dx2 = FormK::basis(3, {2});
  CHECK(wedge(dx0, dx0).terms().empty());
  const Point x = Point::Zero(3);
  CHECK(wedge(dx0, dx1).coefficient_at({0, 1}, x) == -wedge(dx1, dx0).coefficient_at({0, 1}, x));
  const std::vector<Point> e{unit(3, 0), unit(3, 1), unit(3, 2)};
  CHECK(evaluate(wedge(wedge(dx0, dx1), dx2), std::span<const Point>(e), x) == 1.0);
  CHECK_THROWS_AS(wedge(FormK::basis(3, {0, 1}), FormK::basis(3, {1, 2})), DegreeError);

  const auto pts = dyadic_points(5, 20);
  for (int trial = 0; trial < 20; ++trial) {
    const int ka = testing::uniform_int(0, 2);
    const int kb = testing::uniform_int(0, 2);
    const int kc = testing::uniform_int(0, 1);
    const auto a = testing::random_polynomial_form(5, ka, 2);
    const auto b = testing::random_polynomial_form(5, kb, 2);
    const auto c = testing::random_polynomial_form(5, kc, 1);
    const double sign = ((ka * kb) % 2 == 0) ? 1.0 : -1.0;
    CHECK(form_distance(wedge(a, b), wedge(b, a).scaled(sign), pts) == 0.0);
    CHECK(form_distance(wedge(wedge(a, b), c), wedge(a, wedge(b, c)), pts) == 0.0);
    const auto b2 = testing::random_polynomial_form(5, kb, 2);
    CHECK(form_distance(wedge(a, b + b2), wedge(a, b) + wedge(a, b2), pts) == 0.0);
  }
}

TEST_CASE("exterior derivative", "[extgeo][d]") {
  CHECK(exterior_derivative(FormK::function(Coefficient<double>::constant(4, 3.0))).terms().empty());

  FormK w(3, 1);
  w.add_term({1}, Coefficient<double>(3, [](const Point& x) { return x(0); }));
  const auto dw = exterior_derivative(w);
  for (const auto& x : sample_points(3, 10)) {
    CHECK_THAT(dw.coefficient_at({0, 1}, x), WithinAbs(1.0, 1e-6));
    CHECK_THAT(dw.coefficient_at({1, 2}, x), WithinAbs(0.0, 1e-6));
    CHECK_THAT(dw.coefficient_at({0, 2}, x), WithinAbs(0.0, 1e-6));
  }

  FormK wp(3, 1);
  wp.add_term({1}, poly(var(3, 0)));
  const auto dwp = exterior_derivative(wp);
  REQUIRE(dwp.terms().size() == 1);
  CHECK(dwp.terms().begin()->first == IndexTuple{0, 1});

  for (int dim = 1; dim <= 6; ++dim) {
    for (int k = 0; k <= std::min(3, dim); ++k) {
      const auto form = testing::random_polynomial_form(dim, k, 4);
      const auto ddf = exterior_derivative(exterior_derivative(form));
      CHECK(max_abs_coefficient(ddf, std::span<const Point>(sample_points(dim, 50))) < 1e-6);
    }
  }

  const auto f = FormK::function(Coefficient<double>(3, [](const Point& x) {
    return std::sin(x(0) * x(1)) + std::exp(0.3 * x(2)) * x(0);
  }));
  const auto ddf = exterior_derivative(exterior_derivative(f));
  CHECK(max_abs_coefficient(ddf, std::span<const Point>(sample_points(3, 50))) < 1e-6);

  const auto pts = dyadic_points(4, 10);
  for (int trial = 0; trial < 10; ++trial) {
    const int ka = testing::uniform_int(0, 2);
    const auto a = testing::random_polynomial_form(4, ka, 2);
    const auto b = testing::random_polynomial_form(4, 1, 2);
    const auto lhs = exterior_derivative(wedge(a, b));
    const auto rhs = wedge(exterior_derivative(a), b) + wedge(a, exterior_derivative(b)).scaled(ka % 2 == 0 ? 1.0 : -1.0);
    CHECK(form_distance(lhs, rhs, pts) == 0.0);
  }
}

TEST_CASE("Jacobians", "[extgeo][maps]") {
  const Point x = testing::random_point(3);
  CHECK(SmoothMap::identity(3).jacobian(x) == Eigen::MatrixXd::Identity(3, 3));
  const Eigen::MatrixXd l = random_matrix(2, 3);
  CHECK((SmoothMap::linear(l).jacobian(x) - l).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((SmoothMap::linear(l).jacobian_fd(x) - l).cwiseAbs().maxCoeff() < 1e-8);

  const int d = 3;
  std::vector<Coefficient<double>> comps{poly(var(d, 0) * var(d, 1) + var(d, 2) * var(d, 2) * var(d, 2)),
                                         poly(var(d, 1) * var(d, 1) - Polynomial<double>::constant(d, 2.0)),
                                         poly(var(d, 0) * var(d, 1) * var(d, 2))};
  const SmoothMap m(d, comps);
  const auto analytic = [](const Point& p) {
    Eigen::MatrixXd j(3, 3);
    j << p(1), p(0), 3 * p(2) * p(2), 0, 2 * p(1), 0, p(1) * p(2), p(0) * p(2), p(0) * p(1);
    return j;
  };
  const SmoothMap with_analytic(d, comps, analytic);
  for (const auto& p : sample_points(3, 10, 2.0)) {
    CHECK((m.jacobian(p) - analytic(p)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((with_analytic.jacobian(p) - m.jacobian_fd(p)).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("pullbacks", "[extgeo][maps]") {
  const auto pts = sample_points(3, 10);
  const auto w = testing::random_polynomial_form(3, 2, 2);
  CHECK(form_distance(pullback(SmoothMap::identity(3), w), w, pts) == 0.0);

  const SmoothMap twice = SmoothMap::linear(Eigen::MatrixXd::Constant(1, 1, 2.0));
  const auto pulled = pullback(twice, FormK::basis(1, {0}));
  const std::vector<Point> e0{unit(1, 0)};
  for (int i = 0; i < 5; ++i) CHECK(evaluate(pulled, std::span<const Point>(e0), testing::random_point(1)) == 2.0);

  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd l = random_matrix(3, 3);
    const auto top = FormK::basis(3, {0, 1, 2}, 1.7);
    const auto pt = pullback(SmoothMap::linear(l), top);
    for (const auto& x : pts) CHECK_THAT(pt.coefficient_at({0, 1, 2}, x) / 1.7, WithinAbs(l.determinant(), 1e-8));
  }

  for (int trial = 0; trial < 5; ++trial) {
    const SmoothMap g = SmoothMap::linear(random_matrix(4, 3));
    const SmoothMap f = SmoothMap::linear(random_matrix(5, 4));
    const auto omega = testing::random_polynomial_form(5, 2, 2);
    const auto direct = pullback(compose(f, g), omega);
    const auto staged = pullback(g, pullback(f, omega));
    CHECK(form_distance(direct, staged, pts) < 1e-10);
  }

  const auto a = testing::random_polynomial_form(3, 1, 2);
  const auto b = testing::random_polynomial_form(3, 1, 2);
  std::vector<Coefficient<double>> comps{poly(var(3, 0) * var(3, 1)), poly(var(3, 2) + var(3, 0) * var(3, 0)),
                                         poly(var(3, 1) - var(3, 2) * var(3, 0))};
  const SmoothMap f(3, comps);
  CHECK(form_distance(pullback(f, wedge(a, b)), wedge(pullback(f, a), pullback(f, b)), pts) < 1e-12);
  CHECK(form_distance(pullback(f, exterior_derivative(a)), exterior_derivative(pullback(f, a)), pts) < 1e-12);

  const SmoothMap curved(3, {Coefficient<double>(3, [](const Point& x) { return std::sin(x(0)) + x(1); }),
                             Coefficient<double>(3, [](const Point& x) { return x(1) * x(2); }),
                             Coefficient<double>(3, [](const Point& x) { return std::exp(0.5 * x(2)); })});
  const auto lhs = pullback(curved, exterior_derivative(a));
  const auto rhs = exterior_derivative(pullback(curved, a));
  CHECK(form_distance(lhs, rhs, pts) < 1e-5);

  CHECK_THROWS_AS(pullback(SmoothMap::identity(2), w), ShapeError);
  CHECK_THROWS_AS(pullback(SmoothMap::linear(random_matrix(3, 1)), w), ShapeError);
}

TEST_CASE("chain integration", "[extgeo][quadrature]") {
  const auto rule = gauss_legendre(5);
  CHECK_THAT(std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0), WithinAbs(2.0, 1e-14));
  double x4 = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) x4 += rule.weights[i] * std::pow(rule.nodes[i], 8);
  CHECK_THAT(x4, WithinAbs(2.0 / 9.0, 1e-14));

  const auto area = FormK::basis(2, {0, 1});
  Chain square;
  square.add({Box::unit(2), SmoothMap::identity(2), 1, 1});
  const auto r = integrate(area, square);
  CHECK_THAT(r.value, WithinAbs(1.0, 1e-10));
  CHECK(r.error_estimate < 1e-12);

  Chain reversed;
  reversed.add({Box::unit(2), SmoothMap::identity(2), -1, 1});
  CHECK(integrate(area, reversed).value == -r.value);
  Chain triple;
  triple.add({Box::unit(2), SmoothMap::identity(2), 1, 3});
  CHECK(integrate(area, triple).value == 3.0 * r.value);

  const SmoothMap polar(2, {Coefficient<double>(2, [](const Point& p) { return p(0) * std::cos(p(1)); }),
                            Coefficient<double>(2, [](const Point& p) { return p(0) * std::sin(p(1)); })},
                        [](const Point& p) {
                          Eigen::MatrixXd j(2, 2);
                          j << std::cos(p(1)), -p(0) * std::sin(p(1)), std::sin(p(1)), p(0) * std::cos(p(1));
                          return j;
                        });
  Chain quarter;
  Box box{Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(1.0, std::numbers::pi / 2)};
  quarter.add({box, polar, 1, 1});
  CHECK_THAT(integrate(area, quarter).value, WithinAbs(std::numbers::pi / 4, 1e-12));

  FormK line(2, 1);
  line.add_term({0}, poly(var(2, 1)));
  Chain segment;
  const SmoothMap curve(1, {poly(var(1, 0)), poly(var(1, 0) * var(1, 0))});
  segment.add({Box::unit(1), curve, 1, 1});
  CHECK_THAT(integrate(line, segment).value, WithinAbs(1.0 / 3.0, 1e-14));

  CHECK_THROWS_AS(integrate(line, square), ShapeError);
  CHECK_THROWS_AS(square.add({Box{Eigen::Vector2d(0, 0), Eigen::Vector2d(0, 1)}, SmoothMap::identity(2), 1, 1}), ShapeError);
  CHECK_THROWS_AS(gauss_legendre(0), RangeError);
}

TEST_CASE("Lie derivative of functions", "[extgeo][lie]") {
  const auto e0 = VectorField::constant(unit(3, 0));
  const Point x = testing::random_point(3);
  CHECK(lie_function(e0, poly(var(3, 0)), x) == 1.0);
  CHECK(lie_function(e0, Coefficient<double>::constant(3, 4.0), x) == 0.0);

  const VectorField a({Coefficient<double>(3, [](const Point& p) { return std::sin(p(1)) + 0.5; }),
                       poly(var(3, 0) * var(3, 2)), Coefficient<double>::constant(3, -0.3)});
  const Coefficient<double> phi(3, [](const Point& p) { return std::cos(p(0)) * p(1) + p(2) * p(2); });
  const double t = 1e-3;
  for (const auto& p : sample_points(3, 20)) {
    const double oracle = (phi(flow(a, p, t)) - phi(flow(a, p, -t))) / (2.0 * t);
    CHECK_THAT(lie_function(a, phi, p), WithinAbs(oracle, 1e-5));
  }
}

TEST_CASE("flows", "[extgeo][lie]") {
  Eigen::MatrixXd l(2, 2);
  l << 0.0, -1.0, 1.0, 0.0;
  const auto rot = VectorField::linear(l);
  const Point start = unit(2, 0);
  const Point end = flow(rot, start, std::numbers::pi / 2, 256);
  CHECK_THAT(end(0), WithinAbs(0.0, 1e-10));
  CHECK_THAT(end(1), WithinAbs(1.0, 1e-10));
  const auto fr = flow_with_jacobian(rot, start, 0.7, 256);
  Eigen::Matrix2d expected;
  expected << std::cos(0.7), -std::sin(0.7), std::sin(0.7), std::cos(0.7);
  CHECK((fr.jacobian - expected).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("vector field brackets", "[extgeo][lie]") {
  const auto c = commutator(VectorField::constant(unit(3, 0)), VectorField::constant(unit(3, 2)));
  for (int i = 0; i < 3; ++i) CHECK(c[i].is_zero());

  const VectorField a({Coefficient<double>::constant(2, 0.0), poly(var(2, 0))});
  const VectorField b({poly(var(2, 1)), Coefficient<double>::constant(2, 0.0)});
  const Point p(Eigen::Vector2d(1.0, 2.0));
  const auto bracket = commutator(a, b);
  // FD oracle: C^i = A^j d_j B^i - B^j d_j A^i.
  Eigen::Vector2d oracle = Eigen::Vector2d::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      oracle(i) += a[j](p) * central_difference([&](const Point& q) { return b[i](q); }, p, j);
      oracle(i) -= b[j](p) * central_difference([&](const Point& q) { return a[i](q); }, p, j);
    }
  }
  CHECK_THAT(bracket(p)(0), WithinAbs(oracle(0), 1e-8));
  CHECK_THAT(bracket(p)(1), WithinAbs(oracle(1), 1e-8));
  CHECK(bracket(p)(0) == 1.0);
  CHECK(bracket(p)(1) == -2.0);

  const VectorField u({Coefficient<double>(3, [](const Point& q) { return std::sin(q(1)); }),
                       poly(var(3, 0) * var(3, 2)), poly(var(3, 1) + Polynomial<double>::constant(3, 1.0))});
  const VectorField v({poly(var(3, 2) * var(3, 2)), Coefficient<double>(3, [](const Point& q) { return std::cos(q(0)); }),
                       poly(var(3, 0))});
  const Coefficient<double> phi(3, [](const Point& q) { return q(0) * q(1) + std::sin(q(2)); });
  const auto uv = commutator(u, v);
  const auto l_u = [&](const auto& f) {
    return [&u, f](const Point& q) {
      double s = 0.0;
      for (int i = 0; i < 3; ++i) s += u[i](q) * central_difference(f, q, i);
      return s;
    };
  };
  const auto l_v = [&](const auto& f) {
    return [&v, f](const Point& q) {
      double s = 0.0;
      for (int i = 0; i < 3; ++i) s += v[i](q) * central_difference(f, q, i);
      return s;
    };
  };
  const auto phi_fn = [&phi](const Point& q) { return phi(q); };
  const auto uv_phi = l_u(l_v(phi_fn));
  const auto vu_phi = l_v(l_u(phi_fn));
  for (const auto& q : sample_points(3, 20)) {
    CHECK_THAT(lie_function(uv, phi, q), WithinAbs(uv_phi(q) - vu_phi(q), 1e-4));
  }
}

TEST_CASE("Lie derivative of forms", "[extgeo][lie]") {
  const auto e0 = VectorField::constant(unit(3, 0));
  FormK constant(3, 2);
  constant.add_term({0, 1}, Coefficient<double>::constant(3, 2.5));
  constant.add_term({1, 2}, Coefficient<double>::constant(3, -1.0));
  const auto pts = sample_points(3, 10);
  CHECK(max_abs_coefficient(lie_form(e0, constant), std::span<const Point>(pts)) < 1e-10);

  const VectorField a({poly(var(3, 1) * var(3, 2)), poly(var(3, 0) - var(3, 2)),
                       poly(Polynomial<double>::constant(3, 0.5) + var(3, 0) * var(3, 0))});
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = FormK::function(poly(testing::random_polynomial(3, 3, 4)));
    const auto lhs = lie_form(a, exterior_derivative(f));
    const auto rhs = exterior_derivative(cartan_lie_form(a, f));
    CHECK(form_distance(lhs, rhs, pts) < 1e-4);

    const auto w = testing::random_polynomial_form(3, 1, 2);
    CHECK(form_distance(lie_form(a, w), cartan_lie_form(a, w), pts) < 1e-4);
    for (const auto& x : pts) {
      for (const auto& [key, value] : lie_form_at(a, w, x)) {
        CHECK_THAT(value, WithinAbs(cartan_lie_form(a, w).coefficient_at(key, x), 1e-4));
      }
    }
  }
}

TEST_CASE("antisymmetrization", "[extgeo][tensor]") {
  CoefficientTensor<double> sym(4, 0, 2);
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) sym.at({i, j}) = sym.at({j, i}) = testing::uniform();
  }
  CHECK(antisymmetrize(sym).terms().empty());

  CoefficientTensor<double> anti(4, 0, 2);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      anti.at({i, j}) = testing::uniform();
      anti.at({j, i}) = -anti.at({i, j});
    }
  }
  const auto af = antisymmetrize(anti);
  const Point x = Point::Zero(4);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) CHECK_THAT(af.coefficient_at({i, j}, x), WithinAbs(std::sqrt(2.0) * anti.at({i, j}), 1e-15));
  }

  CoefficientTensor<double> t(4, 0, 3);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) t.at({i, j, k}) = testing::uniform();
    }
  }
  const auto once = antisymmetrize(t);
  const auto twice = antisymmetrize(to_tensor(once, x));
  const std::vector<Point> at{x};
  CHECK(form_distance(twice, once.scaled(std::sqrt(6.0)), at) < 1e-12);
  // Oracle: explicit alternating sum over S_3.
  const double oracle = (t.at({0, 1, 2}) - t.at({0, 2, 1}) - t.at({1, 0, 2}) + t.at({1, 2, 0}) + t.at({2, 0, 1}) -
                         t.at({2, 1, 0})) / std::sqrt(6.0);
  CHECK_THAT(once.coefficient_at({0, 1, 2}, x), WithinAbs(oracle, 1e-15));

  CHECK_THROWS_AS(antisymmetrize(CoefficientTensor<double>(3, 1, 1)), ShapeError);
  CHECK_THROWS_AS(antisymmetrize(CoefficientTensor<double>(2, 0, 3)), DegreeError);
}

TEST_CASE("Slater forms", "[extgeo][slater]") {
  const std::vector<ModeIndex> modes{{Sector::s11, 1}, {Sector::s12, 1}, {Sector::s11, 2}};
  WaveFunctionSet fs;
  int seed = 0;
  for (const auto& m : modes) {
    ++seed;
    fs.emplace(m, make_F(m, {testing::random_complex(), testing::random_complex(), testing::random_complex()},
                         [seed](const PointSector& p) { return cplx{std::cos(seed * p.plus[0]), p.minus[1] + seed}; }));
  }
  std::vector<PointSector> pts;
  for (int i = 0; i < 3; ++i) pts.push_back(testing::random_sector_point());
  const cplx c{0.6, 0.8};
  const Point origin = Point::Zero(kChartDim);

  const auto one = slater_form(std::span(pts).first(1), std::span(modes).first(1), c, fs);
  CHECK(one.degree() == 1);
  const auto f0 = fs.at(modes[0]).embedded(pts[0]);
  for (int s = 0; s < kChartDim; ++s) CHECK(std::abs(one.coefficient_at({s}, origin) - c * f0(s)) < 1e-15);

  const std::vector<ModeIndex> repeated{modes[0], modes[0]};
  CHECK(slater_form(std::span(pts).first(2), repeated, c, fs).terms().empty());

  for (std::size_t n = 2; n <= 3; ++n) {
    const std::span<const PointSector> p(pts.data(), n);
    const std::span<const ModeIndex> m(modes.data(), n);
    const auto form = slater_form(p, m, c, fs);
    // Oracle: antisymmetrize the tensor of determinant elements.
    CoefficientTensor<cplx> tensor(kChartDim, 0, static_cast<int>(n));
    for (const auto& key : increasing_tuples(kChartDim, static_cast<int>(n))) {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        IndexTuple idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = key[static_cast<std::size_t>(perm[i])];
        tensor.at(idx) = slater_matrix_element(p, m, c, fs, idx);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    const auto oracle = antisymmetrize(tensor);
    const std::vector<Point> at{origin};
    CHECK(max_abs_coefficient(form - oracle, std::span<const Point>(at)) < 1e-12);

    // Second oracle: (c/n!) sum_pi sgn(pi) F_{r_pi(1)}(x_1) ^ ... ^ F_{r_pi(n)}(x_n).
    ComplexForm wedge_sum(kChartDim, static_cast<int>(n));
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double fact = 1.0;
    for (std::size_t k = 2; k <= n; ++k) fact *= static_cast<double>(k);
    do {
      int sign = 1;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
          if (perm[a] > perm[b]) sign = -sign;
        }
      }
      ComplexForm term = ComplexForm::function(Coefficient<cplx>::constant(kChartDim, c * (sign / fact)));
      for (std::size_t i = 0; i < n; ++i) {
        ComplexForm f1(kChartDim, 1);
        const auto v = fs.at(m[static_cast<std::size_t>(perm[i])]).embedded(p[i]);
        for (int s = 0; s < kChartDim; ++s) f1.add_term({s}, Coefficient<cplx>::constant(kChartDim, v(s)));
        term = wedge(term, f1);
      }
      wedge_sum += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(max_abs_coefficient(form - wedge_sum, std::span<const Point>(at)) < 1e-12);

    std::vector<Point> basis;
    for (std::size_t i = 0; i < n; ++i) basis.push_back(unit(kChartDim, static_cast<int>(2 * i)));
    IndexTuple key;
    for (std::size_t i = 0; i < n; ++i) key.push_back(static_cast<int>(2 * i));
    CHECK(std::abs(evaluate(form, std::span<const Point>(basis), origin) - form.coefficient_at(key, origin)) < 1e-15);
  }
}
