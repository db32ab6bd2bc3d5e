#pragma once

// Closed-form discretization and truncation error bounds for the
// trapezoidal contour quadrature, in both the second-order
// pole-parameterized form (regularizer (delta+a-z)^{-2}) and the m-th
// order form (regularizer (2*delta-z)^{-m}). All functions are pure and
// scalar; exponential factors are evaluated in log space so that extreme
// parameters saturate to 0 or +inf instead of producing NaNs. A bound of
// +inf is legal output meaning "no guarantee".

#include <stdexcept>

#include "sgquad/hypergeo.hpp"

namespace sgq {

/// Growth constants of the semigroup, ||K(t)|| <= M exp(omega*t).
/// The shifted convention omega = 0 is enforced.
struct SemigroupConstants {
  double growth_constant = 1.0;  // M
  double growth_rate = 0.0;      // omega

  void validate() const {
    if (!(growth_constant >= 1.0))
      throw std::invalid_argument("SemigroupConstants: M must be >= 1");
    if (growth_rate != 0.0)
      throw std::invalid_argument(
          "SemigroupConstants: omega must be 0 (shift the generator first)");
  }
};

/// Evaluated error budget at a fixed time.
struct ErrorBudget {
  double e_disc = 0.0;
  double e_trunc = 0.0;
  double total = 0.0;
  double graph_norm = 0.0;
};

namespace bounds {

/// Discretization error bound of the m-th order scheme:
///   E_D = M e^{3 delta t/2} / (delta^m (e^{delta pi/h}-1))
///         * [2^{m+1} G(m) / pi] * graph_norm.
double disc_bound_m(const SemigroupConstants& c, double delta, EvenOrder m,
                    double t, double h, double graph_norm);

/// Truncation error bound of the m-th order scheme:
///   E_T = (M e^{delta t} / delta^m) * (1/pi) * T_m(hN/delta) * graph_norm.
double trunc_bound_m(const SemigroupConstants& c, double delta, EvenOrder m,
                     double t, double h, long n_half, double graph_norm);

/// Discretization error bound of the second-order scheme with pole
/// delta + a:  (M e^{delta t}/(delta a)) * 4 e^{sigma t/2}/(e^{sigma pi/h}-1)
/// * graph_norm, sigma = min(delta, a).
double disc_bound_2(const SemigroupConstants& c, double delta, double a,
                    double t, double h, double graph_norm);

/// Truncation error bound of the second-order scheme:
///   (M e^{delta t}/(delta a)) * [1/2 - arctan(hN/a)/pi] * graph_norm.
double trunc_bound_2(const SemigroupConstants& c, double delta, double a,
                     double t, double h, long n_half, double graph_norm);

/// Leading-order truncation bound
///   (M e^{delta t}/(pi delta^m)) * (1/(m-1)) (delta/(hN))^{m-1} * graph_norm.
/// Dominates trunc_bound_m and approaches it as N -> infinity.
double trunc_bound_asymptotic(const SemigroupConstants& c, double delta,
                              EvenOrder m, double t, double h, long n_half,
                              double graph_norm);

/// Budget of the m-th order scheme at time t.
ErrorBudget total_budget_m(const SemigroupConstants& c, double delta,
                           EvenOrder m, double t, double h, long n_half,
                           double graph_norm);

/// Budget of the second-order scheme with pole location a at time t.
ErrorBudget total_budget_2(const SemigroupConstants& c, double delta, double a,
                           double t, double h, long n_half, double graph_norm);

}  // namespace bounds
}  // namespace sgq
