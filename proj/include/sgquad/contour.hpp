#pragma once

// Quadrature nodes and time-dependent coefficients of the trapezoidal
// contour rule, precomputation of resolvent samples (the only stage that
// touches the solver), and assembly of the approximation to exp(At)x at
// arbitrary times from a fixed sample set.

#include <string>
#include <vector>

#include "sgquad/operators.hpp"
#include "sgquad/params.hpp"

namespace sgq {

struct QuadratureNode {
  long k;
  std::complex<double> z;  // delta + i*h*k
};

/// Where the regularizer inversion is applied. Pre-regularized solves
/// against (2*delta - A)^m x so the assembled sum is the answer directly;
/// post-regularized solves against x and applies (2*delta - A)^m to the
/// assembled sum.
enum class Strategy { pre_regularized, post_regularized };

struct ResolventSample {
  long k;
  Eigen::VectorXcd u;
  double residual_norm;
};

/// The 2N+1 solved vectors u_k = R_A(delta + ihk) x~ with per-node
/// residual norms. Immutable after precompute; assembly at any number of
/// times reuses it without further solves.
struct ResolventSampleSet {
  ContourPlan plan;
  Strategy strategy = Strategy::pre_regularized;
  bool conjugate_symmetric = false;
  std::string x_tag;
  double residual_ceiling = 1e-8;
  bool residual_warning = false;  // some node exceeded the ceiling
  std::vector<ResolventSample> samples;  // ascending k, exactly 2N+1

  double max_residual() const;
  const ResolventSample& at(long k) const;
};

namespace contour {

/// The 2N+1 nodes z_k = delta + i*h*k, ascending k.
std::vector<QuadratureNode> nodes(const ContourPlan& plan);

/// c_k(t) = (h/2pi) e^{(delta+ihk)t} / (delta-ihk)^m.
std::complex<double> coefficient(const ContourPlan& plan, long k, double t);

/// max |c_k| / min |c_k| over the rule; logged as a conditioning
/// diagnostic for large delta.
double coefficient_dynamic_range(const ContourPlan& plan, double t);

/// Solve all 2N+1 shifted systems. Real input enables conjugate symmetry
/// (only k >= 0 solved, k < 0 mirrored); node solves are distributed over
/// `workers` threads and order-merged deterministically.
ResolventSampleSet precompute(const GeneratorBackend& backend,
                              const Eigen::VectorXd& x,
                              const ContourPlan& plan,
                              Strategy strategy = Strategy::pre_regularized,
                              int workers = 1, double residual_ceiling = 1e-8,
                              std::string x_tag = "x");

/// Complex-input variant; conjugate symmetry disabled.
ResolventSampleSet precompute(const GeneratorBackend& backend,
                              const Eigen::VectorXcd& x,
                              const ContourPlan& plan,
                              Strategy strategy = Strategy::pre_regularized,
                              int workers = 1, double residual_ceiling = 1e-8,
                              std::string x_tag = "x");

/// Quadrature sum Sum_k c_k(t) u_k (plus the regularizer application in
/// post-regularized mode), as a complex vector.
Eigen::VectorXcd assemble_complex(const ResolventSampleSet& samples, double t,
                                  const GeneratorBackend& backend);

/// Real-valued assembly: discards the imaginary part after verifying
/// ||Im S|| <= imag_tol * ||S|| (broken symmetry otherwise).
Eigen::VectorXd assemble(const ResolventSampleSet& samples, double t,
                         const GeneratorBackend& backend,
                         double imag_tol = 1e-8);

/// Checkpoint container (text, full precision) so long runs can be
/// re-assembled offline.
void save_samples(const ResolventSampleSet& samples, const std::string& path);
ResolventSampleSet load_samples(const std::string& path);

}  // namespace contour
}  // namespace sgq
