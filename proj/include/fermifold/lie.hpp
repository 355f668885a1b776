#pragma once

// Vector fields, their flows, brackets and Lie derivatives. Flows use classical
// RK4 with a fixed step count, so results are deterministic for fixed input.

#include <Eigen/Dense>

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fermifold/coefficient.hpp"
#include "fermifold/errors.hpp"
#include "fermifold/forms.hpp"
#include "fermifold/maps.hpp"

namespace fermifold {

inline constexpr int kDefaultFlowSteps = 64;
inline constexpr double kDefaultFlowTime = 1e-3;

class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::vector<Coefficient<double>> components) : comps_(std::move(components)) {
    if (comps_.empty()) throw ShapeError("vector field needs at least one component");
    for (const auto& c : comps_) {
      if (c.dim() != dim()) throw ShapeError("vector field component on wrong dimension");
    }
  }

  static VectorField constant(const Eigen::VectorXd& v) {
    std::vector<Coefficient<double>> comps;
    const int d = static_cast<int>(v.size());
    for (int i = 0; i < d; ++i) comps.push_back(Coefficient<double>::constant(d, v(i)));
    return VectorField(std::move(comps));
  }

  /// A(x) = L x.
  static VectorField linear(const Eigen::MatrixXd& l) {
    if (l.rows() != l.cols()) throw ShapeError("linear vector field needs a square matrix");
    return VectorField(SmoothMap::linear(l).components());
  }

  int dim() const { return static_cast<int>(comps_.size()); }
  const std::vector<Coefficient<double>>& components() const { return comps_; }
  const Coefficient<double>& operator[](int i) const { return comps_.at(static_cast<std::size_t>(i)); }

  Eigen::VectorXd operator()(const Point& x) const {
    Eigen::VectorXd v(dim());
    for (int i = 0; i < dim(); ++i) v(i) = comps_[static_cast<std::size_t>(i)](x);
    return v;
  }

  /// DA(x)_{ij} = d A^i / d x^j.
  Eigen::MatrixXd jacobian(const Point& x) const {
    Eigen::MatrixXd j(dim(), dim());
    for (int i = 0; i < dim(); ++i) {
      for (int k = 0; k < dim(); ++k) j(i, k) = comps_[static_cast<std::size_t>(i)].derivative(k)(x);
    }
    return j;
  }

 private:
  std::vector<Coefficient<double>> comps_;
};

/// L_A phi as a function: A^i d_i phi.
inline Coefficient<double> lie_derivative(const VectorField& a, const Coefficient<double>& phi) {
  if (phi.dim() != a.dim()) throw ShapeError("function and vector field on different dimensions");
  Coefficient<double> out = Coefficient<double>::zero(a.dim());
  for (int i = 0; i < a.dim(); ++i) out = out + a[i] * phi.derivative(i);
  return out;
}

inline double lie_function(const VectorField& a, const Coefficient<double>& phi, const Point& x) {
  return lie_derivative(a, phi)(x);
}

/// C^i = A^j d_j B^i - B^j d_j A^i, so that L_C = L_A L_B - L_B L_A.
inline VectorField commutator(const VectorField& a, const VectorField& b) {
  if (a.dim() != b.dim()) throw ShapeError("bracket of vector fields on different dimensions");
  std::vector<Coefficient<double>> comps;
  for (int i = 0; i < a.dim(); ++i) comps.push_back(lie_derivative(a, b[i]) - lie_derivative(b, a[i]));
  return VectorField(std::move(comps));
}

struct FlowResult {
  Point point;
  /// d phi_t(x) / dx.
  Eigen::MatrixXd jacobian;
};

/// phi_t(x) and its Jacobian, integrating x' = A(x), J' = DA(x) J with RK4.
inline FlowResult flow_with_jacobian(const VectorField& a, const Point& x, double t, int steps = kDefaultFlowSteps) {
  if (x.size() != a.dim()) throw ShapeError("flow start point has wrong dimension");
  if (steps < 1) throw RangeError("flow needs at least one step");
  const double h = t / steps;
  Point p = x;
  Eigen::MatrixXd j = Eigen::MatrixXd::Identity(a.dim(), a.dim());
  for (int s = 0; s < steps; ++s) {
    const Eigen::VectorXd k1 = a(p);
    const Eigen::MatrixXd m1 = a.jacobian(p) * j;
    const Point p2 = p + 0.5 * h * k1;
    const Eigen::VectorXd k2 = a(p2);
    const Eigen::MatrixXd m2 = a.jacobian(p2) * (j + 0.5 * h * m1);
    const Point p3 = p + 0.5 * h * k2;
    const Eigen::VectorXd k3 = a(p3);
    const Eigen::MatrixXd m3 = a.jacobian(p3) * (j + 0.5 * h * m2);
    const Point p4 = p + h * k3;
    const Eigen::VectorXd k4 = a(p4);
    const Eigen::MatrixXd m4 = a.jacobian(p4) * (j + h * m3);
    p += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    j += (h / 6.0) * (m1 + 2.0 * m2 + 2.0 * m3 + m4);
  }
  return {p, j};
}

inline Point flow(const VectorField& a, const Point& x, double t, int steps = kDefaultFlowSteps) {
  if (x.size() != a.dim()) throw ShapeError("flow start point has wrong dimension");
  if (steps < 1) throw RangeError("flow needs at least one step");
  const double h = t / steps;
  Point p = x;
  for (int s = 0; s < steps; ++s) {
    const Eigen::VectorXd k1 = a(p);
    const Eigen::VectorXd k2 = a(p + 0.5 * h * k1);
    const Eigen::VectorXd k3 = a(p + 0.5 * h * k2);
    const Eigen::VectorXd k4 = a(p + h * k3);
    p += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return p;
}

namespace detail {

/// ((phi_t^* omega)_J(x) - omega_J(x)) / t for every increasing J.
inline std::vector<double> flow_quotients(const VectorField& a, const FormK& form, const std::vector<IndexTuple>& keys,
                                          const Point& x, double t) {
  const FlowResult fr = flow_with_jacobian(a, x, t);
  std::vector<double> out;
  out.reserve(keys.size());
  for (const auto& cols : keys) {
    double pulled = 0.0;
    for (const auto& [idx, c] : form.terms()) pulled += c(fr.point) * minor_det(fr.jacobian, idx, cols);
    out.push_back((pulled - form.coefficient_at(cols, x)) / t);
  }
  return out;
}

}  // namespace detail

/// L_A omega = d/dt phi_t^* omega at t = 0, from the flow difference quotient with one
/// Richardson step: 2 Q(t/2) - Q(t).
inline FormK lie_form(const VectorField& a, const FormK& form, double t = kDefaultFlowTime) {
  if (a.dim() != form.dim()) throw ShapeError("vector field and form on different dimensions");
  const auto keys = increasing_tuples(form.dim(), form.degree());
  FormK out(form.dim(), form.degree());
  for (std::size_t n = 0; n < keys.size(); ++n) {
    out.add_term(keys[n], Coefficient<double>(form.dim(), [a, form, keys, n, t](const Point& x) {
                   const auto full = detail::flow_quotients(a, form, {keys[n]}, x, t);
                   const auto half = detail::flow_quotients(a, form, {keys[n]}, x, 0.5 * t);
                   return 2.0 * half[0] - full[0];
                 }));
  }
  return out;
}

/// Flow-limit Lie derivative evaluated at one point, all coefficients at once.
inline std::vector<std::pair<IndexTuple, double>> lie_form_at(const VectorField& a, const FormK& form, const Point& x,
                                                              double t = kDefaultFlowTime) {
  if (a.dim() != form.dim()) throw ShapeError("vector field and form on different dimensions");
  const auto keys = increasing_tuples(form.dim(), form.degree());
  const auto full = detail::flow_quotients(a, form, keys, x, t);
  const auto half = detail::flow_quotients(a, form, keys, x, 0.5 * t);
  std::vector<std::pair<IndexTuple, double>> out;
  for (std::size_t n = 0; n < keys.size(); ++n) out.emplace_back(keys[n], 2.0 * half[n] - full[n]);
  return out;
}

/// i_A d omega + d i_A omega; exact on polynomial data.
inline FormK cartan_lie_form(const VectorField& a, const FormK& form) {
  if (a.dim() != form.dim()) throw ShapeError("vector field and form on different dimensions");
  const std::span<const Coefficient<double>> comps(a.components());
  FormK out = form.degree() < form.dim() ? interior(comps, exterior_derivative(form)) : FormK(form.dim(), form.degree());
  if (form.degree() > 0) out += exterior_derivative(interior(comps, form));
  return out;
}

}  // namespace fermifold
