#include "sgquad/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace sgq::bounds {

namespace {

constexpr double kPi = std::numbers::pi;

void check_common(const SemigroupConstants& c, double delta, double t,
                  double h, double graph_norm) {
  c.validate();
  if (!(delta > 0.0)) throw std::domain_error("bounds: require delta > 0");
  if (!(t >= 0.0)) throw std::domain_error("bounds: require t >= 0");
  if (!(h > 0.0)) throw std::domain_error("bounds: require h > 0");
  if (!(graph_norm >= 0.0))
    throw std::domain_error("bounds: require graph_norm >= 0");
}

// log(e^x - 1), stable for both small and large x.
double log_expm1(double x) {
  if (x > 36.0) return x;  // e^{-x} below double resolution
  return std::log(std::expm1(x));
}

// exp with saturation; exponent +inf -> +inf, -inf -> 0.
double exp_sat(double x) {
  if (std::isinf(x)) return x > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  return std::exp(x);
}

}  // namespace

double disc_bound_m(const SemigroupConstants& c, double delta, EvenOrder m,
                    double t, double h, double graph_norm) {
  check_common(c, delta, t, h, graph_norm);
  if (graph_norm == 0.0) return 0.0;
  const double bracket =
      std::pow(2.0, m.value() + 1) * hypergeo::gamma_ratio(m) / kPi;
  const double log_e = std::log(c.growth_constant) + 1.5 * delta * t -
                       m.value() * std::log(delta) + std::log(bracket) +
                       std::log(graph_norm) - log_expm1(delta * kPi / h);
  return exp_sat(log_e);
}

double trunc_bound_m(const SemigroupConstants& c, double delta, EvenOrder m,
                     double t, double h, long n_half, double graph_norm) {
  check_common(c, delta, t, h, graph_norm);
  if (n_half < 1) throw std::domain_error("trunc_bound_m: require N >= 1");
  if (graph_norm == 0.0) return 0.0;
  const double tail = hypergeo::hyp_tail(m, h * double(n_half) / delta);
  const double log_e = std::log(c.growth_constant) + delta * t -
                       m.value() * std::log(delta) + std::log(tail / kPi) +
                       std::log(graph_norm);
  return exp_sat(log_e);
}

double disc_bound_2(const SemigroupConstants& c, double delta, double a,
                    double t, double h, double graph_norm) {
  check_common(c, delta, t, h, graph_norm);
  if (!(a > 0.0)) throw std::domain_error("disc_bound_2: require a > 0");
  if (graph_norm == 0.0) return 0.0;
  const double sigma = std::min(delta, a);
  const double log_e = std::log(c.growth_constant) + delta * t +
                       0.5 * sigma * t - std::log(delta * a) +
                       std::log(4.0) + std::log(graph_norm) -
                       log_expm1(sigma * kPi / h);
  return exp_sat(log_e);
}

double trunc_bound_2(const SemigroupConstants& c, double delta, double a,
                     double t, double h, long n_half, double graph_norm) {
  check_common(c, delta, t, h, graph_norm);
  if (!(a > 0.0)) throw std::domain_error("trunc_bound_2: require a > 0");
  if (n_half < 1) throw std::domain_error("trunc_bound_2: require N >= 1");
  if (graph_norm == 0.0) return 0.0;
  // 1/2 - arctan(hN/a)/pi = arctan(a/(hN))/pi; the reciprocal form keeps
  // full relative accuracy when hN/a is large.
  const double bracket = std::atan(a / (h * double(n_half))) / kPi;
  const double log_e = std::log(c.growth_constant) + delta * t -
                       std::log(delta * a) + std::log(bracket) +
                       std::log(graph_norm);
  return exp_sat(log_e);
}

double trunc_bound_asymptotic(const SemigroupConstants& c, double delta,
                              EvenOrder m, double t, double h, long n_half,
                              double graph_norm) {
  check_common(c, delta, t, h, graph_norm);
  if (n_half < 1)
    throw std::domain_error("trunc_bound_asymptotic: require N >= 1");
  if (graph_norm == 0.0) return 0.0;
  const double y = h * double(n_half) / delta;
  const double log_e = std::log(c.growth_constant) + delta * t -
                       m.value() * std::log(delta) - std::log(kPi) -
                       std::log(double(m.value() - 1)) -
                       (m.value() - 1) * std::log(y) + std::log(graph_norm);
  return exp_sat(log_e);
}

ErrorBudget total_budget_m(const SemigroupConstants& c, double delta,
                           EvenOrder m, double t, double h, long n_half,
                           double graph_norm) {
  ErrorBudget b;
  b.e_disc = disc_bound_m(c, delta, m, t, h, graph_norm);
  b.e_trunc = trunc_bound_m(c, delta, m, t, h, n_half, graph_norm);
  b.total = b.e_disc + b.e_trunc;
  b.graph_norm = graph_norm;
  return b;
}

ErrorBudget total_budget_2(const SemigroupConstants& c, double delta, double a,
                           double t, double h, long n_half,
                           double graph_norm) {
  ErrorBudget b;
  b.e_disc = disc_bound_2(c, delta, a, t, h, graph_norm);
  b.e_trunc = trunc_bound_2(c, delta, a, t, h, n_half, graph_norm);
  b.total = b.e_disc + b.e_trunc;
  b.graph_norm = graph_norm;
  return b;
}

}  // namespace sgq::bounds
