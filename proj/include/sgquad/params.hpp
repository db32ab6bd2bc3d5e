#pragma once

// Quadrature parameter selection: exact inversion of the discretization
// bound for the node spacing h, leading-order inversion of the truncation
// bound for the node count N, and numeric spacing optimization at fixed N.

#include <complex>

#include "sgquad/bounds.hpp"

namespace sgq {

/// Full parameter set of the m-th order contour quadrature. Nodes are
/// z_k = delta + i*h*k for k in [-N, N].
struct ContourPlan {
  double delta = 1.0;
  double h = 1.0;
  long n_half = 1;  // N; the rule uses 2N+1 nodes
  EvenOrder m = EvenOrder(2);
  double t_max = 1.0;

  void validate() const {
    if (!(delta > 0.0) || !(h > 0.0) || n_half < 1 || !(t_max > 0.0))
      throw std::invalid_argument("ContourPlan: all parameters must be positive");
  }
};

/// Requested plan cannot be satisfied within the node budget, or the
/// budget is infinite over the whole search bracket.
struct PlanInfeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace params {

inline constexpr long kDefaultMaxNodes = 10'000'000;

/// Spacing h with disc_bound_m(c, delta, m, T, h, graph_norm) = eps/2,
/// solved in closed form (log-space arithmetic, well defined for any
/// eps > 0).
double spacing_for_tolerance(double eps, double delta, EvenOrder m, double T,
                             const SemigroupConstants& c, double graph_norm);

/// Smallest N with trunc_bound_asymptotic(..., T, h, N, ...) <= eps/2.
/// Throws PlanInfeasible beyond max_nodes.
long nodes_for_tolerance(double eps, double delta, EvenOrder m, double T,
                         const SemigroupConstants& c, double graph_norm,
                         double h, long max_nodes = kDefaultMaxNodes);

/// Spacing minimizing the total m-th order budget at time t for fixed N.
/// Golden-section search on log h over h in [1e-4*delta, 10*delta].
double optimize_spacing(long n_half, double delta, EvenOrder m, double t,
                        const SemigroupConstants& c, double graph_norm);

/// Compose spacing and node selection for target accuracy eps over [0, T],
/// then verify the exact truncation bound (growing N geometrically if the
/// asymptotic inversion fell short).
ContourPlan plan(double eps, double delta, EvenOrder m, double T,
                 const SemigroupConstants& c, double graph_norm,
                 long max_nodes = kDefaultMaxNodes);

}  // namespace params
}  // namespace sgq
