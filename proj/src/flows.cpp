#include "sgquad/flows.hpp"

#include <cmath>
#include <stdexcept>

namespace sgq::flows {

double flow_example1(double x, double t) { return x * std::exp(-t); }

double flow_example2(double x, double t) {
  // Closed form of xdot = 2x - 8x^3, cross-validated against ode_oracle
  // (the radical is 1 + 4x^2(e^{4t} - 1), positive for all x, t >= 0).
  return x * std::exp(2.0 * t) /
         std::sqrt(1.0 + 4.0 * x * x * std::expm1(4.0 * t));
}

Eigen::Vector2d flow_example3(const Eigen::Vector2d& x, double t) {
  const double c = std::cos(t), s = std::sin(t);
  return {c * x[0] + s * x[1], -s * x[0] + c * x[1]};
}

Eigen::Vector2d flow_example4(const Eigen::Vector2d& x, double t) {
  return {flow_example2(x[0], t), flow_example2(x[1], t)};
}

Eigen::VectorXd ode_oracle(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& velocity,
    const Eigen::VectorXd& x0, double t, double tol) {
  if (!(tol >= 1e-14 && tol <= 1e-6))
    throw std::invalid_argument("ode_oracle: tol must be in [1e-14, 1e-6]");
  if (!(t >= 0.0)) throw std::domain_error("ode_oracle: require t >= 0");

  // Dormand-Prince 5(4) tableau.
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                      a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                      a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  Eigen::VectorXd x = x0;
  double s = 0.0;
  double dt = std::min(t, 0.01);
  Eigen::VectorXd k1 = velocity(x);
  while (s < t) {
    dt = std::min(dt, t - s);
    const Eigen::VectorXd k2 = velocity(x + dt * (a21 * k1));
    const Eigen::VectorXd k3 = velocity(x + dt * (a31 * k1 + a32 * k2));
    const Eigen::VectorXd k4 =
        velocity(x + dt * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::VectorXd k5 =
        velocity(x + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::VectorXd k6 = velocity(
        x + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Eigen::VectorXd x_new =
        x + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Eigen::VectorXd k7 = velocity(x_new);
    const Eigen::VectorXd err_vec =
        dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
    const double err = err_vec.cwiseAbs().maxCoeff() / scale;
    if (err <= tol) {
      s += dt;
      x = x_new;
      k1 = k7;  // FSAL
    }
    const double factor =
        err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
    dt *= std::clamp(factor, 0.2, 5.0);
    if (dt < 1e-15 * std::max(1.0, t))
      throw std::runtime_error("ode_oracle: step size underflow");
  }
  return x;
}

}  // namespace sgq::flows
