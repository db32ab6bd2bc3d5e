#pragma once

// Exact flow maps for the four experiment systems plus an adaptive
// high-order ODE integrator used as an independent reference.

#include <Eigen/Dense>
#include <functional>

namespace sgq::flows {

/// phi(x, t) = x e^{-t}, flow of xdot = -x on [-1, 1].
double flow_example1(double x, double t);

/// Flow of xdot = 2x - 8x^3 on [-1, 1]:
/// phi(x, t) = x e^{2t} / sqrt(1 + 4x^2 (e^{4t} - 1)).
double flow_example2(double x, double t);

/// Flow of xdot = Bx with B = [0 1; -1 0] (clockwise rotation of the
/// point by angle t in the (x, y) plane).
Eigen::Vector2d flow_example3(const Eigen::Vector2d& x, double t);

/// Componentwise copy of flow_example2.
Eigen::Vector2d flow_example4(const Eigen::Vector2d& x, double t);

/// [K(t)g](x) = g(phi(x, t)).
template <typename Flow, typename Observable, typename Point>
auto exact_pullback(Flow&& phi, Observable&& g, const Point& x, double t) {
  return g(phi(x, t));
}

/// Adaptive Dormand-Prince 5(4) integration of xdot = F(x) from x0 over
/// [0, t] to local tolerance tol. Reference oracle only; not used by the
/// quadrature scheme.
Eigen::VectorXd ode_oracle(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& velocity,
    const Eigen::VectorXd& x0, double t, double tol);

}  // namespace sgq::flows
