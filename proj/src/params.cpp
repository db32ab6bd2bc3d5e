#include "sgquad/params.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace sgq::params {

namespace {

constexpr double kPi = std::numbers::pi;

// log(1 + e^q) without overflow.
double log1p_exp(double q) {
  if (q > 36.0) return q;
  return std::log1p(std::exp(q));
}

}  // namespace

double spacing_for_tolerance(double eps, double delta, EvenOrder m, double T,
                             const SemigroupConstants& c, double graph_norm) {
  c.validate();
  if (!(eps > 0.0)) throw std::domain_error("spacing_for_tolerance: eps > 0");
  if (!(delta > 0.0) || !(T >= 0.0) || !(graph_norm > 0.0))
    throw std::domain_error("spacing_for_tolerance: bad parameters");
  // E_D(h) = B / (e^{delta pi / h} - 1) with
  //   B = M e^{3 delta T/2} / delta^m * 2^{m+1} G(m)/pi * graph_norm;
  // E_D = eps/2 inverts to h = pi*delta / log(1 + 2B/eps).
  const double bracket =
      std::pow(2.0, m.value() + 1) * hypergeo::gamma_ratio(m) / kPi;
  const double log_b = std::log(c.growth_constant) + 1.5 * delta * T -
                       m.value() * std::log(delta) + std::log(bracket) +
                       std::log(graph_norm);
  const double q = std::log(2.0) - std::log(eps) + log_b;
  return kPi * delta / log1p_exp(q);
}

long nodes_for_tolerance(double eps, double delta, EvenOrder m, double T,
                         const SemigroupConstants& c, double graph_norm,
                         double h, long max_nodes) {
  c.validate();
  if (!(eps > 0.0) || !(delta > 0.0) || !(T >= 0.0) || !(graph_norm > 0.0) ||
      !(h > 0.0))
    throw std::domain_error("nodes_for_tolerance: bad parameters");
  // Invert the leading-order truncation bound at eps/2:
  //   (M e^{delta T} / (pi delta^m)) * (delta/(hN))^{m-1}/(m-1) = eps/2
  //   =>  hN = [ (2/eps) M e^{delta T} graph_norm / (pi delta (m-1)) ]^{1/(m-1)}.
  const double log_hn =
      (std::log(2.0) - std::log(eps) + std::log(c.growth_constant) +
       delta * T - std::log(kPi * delta) - std::log(double(m.value() - 1)) +
       std::log(graph_norm)) /
      double(m.value() - 1);
  const double n_real = std::exp(log_hn) / h;
  if (!(n_real < double(max_nodes)))
    throw PlanInfeasible("nodes_for_tolerance: N exceeds node budget");
  return std::max(1L, (long)std::ceil(n_real));
}

double optimize_spacing(long n_half, double delta, EvenOrder m, double t,
                        const SemigroupConstants& c, double graph_norm) {
  if (n_half < 1) throw std::domain_error("optimize_spacing: require N >= 1");
  auto budget = [&](double log_h) {
    return bounds::total_budget_m(c, delta, m, t, std::exp(log_h), n_half,
                                  graph_norm)
        .total;
  };
  double lo = std::log(1e-4 * delta), hi = std::log(10.0 * delta);
  // Golden-section assumes unimodality (E_T decreasing vs E_D increasing
  // in h); if the whole bracket evaluates infinite, there is nothing to
  // minimize.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = budget(x1), f2 = budget(x2);
  if (std::isinf(f1) && std::isinf(f2)) {
    // Dense probe fallback before declaring infeasibility.
    double best = std::numeric_limits<double>::infinity(), best_lh = lo;
    for (int i = 0; i <= 100; ++i) {
      double lh = lo + (hi - lo) * i / 100.0;
      double f = budget(lh);
      if (f < best) best = f, best_lh = lh;
    }
    if (std::isinf(best))
      throw PlanInfeasible("optimize_spacing: budget infinite over bracket");
    lo = std::max(lo, best_lh - (hi - lo) / 100.0);
    hi = std::min(hi, best_lh + (hi - lo) / 100.0);
    x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    f1 = budget(x1), f2 = budget(x2);
  }
  while (hi - lo > 1e-6) {
    if (f1 < f2) {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = budget(x1);
    } else {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = budget(x2);
    }
  }
  return std::exp(0.5 * (lo + hi));
}

ContourPlan plan(double eps, double delta, EvenOrder m, double T,
                 const SemigroupConstants& c, double graph_norm,
                 long max_nodes) {
  const double h = spacing_for_tolerance(eps, delta, m, T, c, graph_norm);
  long n = nodes_for_tolerance(eps, delta, m, T, c, graph_norm, h, max_nodes);
  // The asymptotic inversion dominates the exact tail bound, so this loop
  // normally exits immediately; it is kept as a guard for the pre-asymptotic
  // regime hN/delta < 1.
  while (bounds::trunc_bound_m(c, delta, m, T, h, n, graph_norm) >
         0.5 * eps * (1.0 + 1.0 / double(n))) {
    if (n >= max_nodes)
      throw PlanInfeasible("plan: exact truncation bound unattainable");
    n = std::min(max_nodes, (long)std::ceil(1.25 * double(n)));
  }
  return ContourPlan{delta, h, n, m, T};
}

}  // namespace sgq::params
