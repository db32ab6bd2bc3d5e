#pragma once

// Abstract generator backend: shifted complex solves, operator
// application, graph norms, sup-norms, and the residual-based a
// posteriori solve-error bound. Backends are immutable after
// construction; apply/solve are safe for concurrent invocation.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <atomic>
#include <complex>
#include <memory>

#include "sgquad/bounds.hpp"

namespace sgq {

/// Discretized generator A with a direct shifted solver for (z - A)u = x.
class GeneratorBackend {
 public:
  virtual ~GeneratorBackend() = default;

  virtual Eigen::Index dimension() const = 0;

  /// A v (exact on the backend's finite-dimensional subspace).
  virtual Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const = 0;

  /// Raw direct solve of (z - A)u = rhs. Does not compute a residual;
  /// use solve_shifted for the checked variant.
  virtual Eigen::VectorXcd solve(std::complex<double> z,
                                 const Eigen::VectorXcd& rhs) const = 0;

  const SemigroupConstants& constants() const noexcept { return constants_; }

  /// Number of raw solves performed so far (diagnostic; used to verify
  /// sample reuse across assembly times).
  long solve_count() const noexcept { return solve_calls_.load(); }

 protected:
  explicit GeneratorBackend(SemigroupConstants c) : constants_(c) {
    constants_.validate();
  }
  void count_solve() const noexcept { ++solve_calls_; }

  SemigroupConstants constants_;

 private:
  mutable std::atomic<long> solve_calls_{0};
};

struct ShiftedSolve {
  Eigen::VectorXcd u;
  double residual_norm;  // ||(z-A)u - x|| recomputed via apply()
};

namespace operators {

/// Sup-norm (max-abs) over grid/collocation values.
double sup_norm(const Eigen::VectorXd& x);
double sup_norm(const Eigen::VectorXcd& x);

/// Solve (z - A)u = x for Re z > 0 and report the true residual norm,
/// obtained by re-applying the operator (solver internals are untrusted).
ShiftedSolve solve_shifted(const GeneratorBackend& backend,
                           std::complex<double> z, const Eigen::VectorXcd& x);

/// ||u_tilde - u|| <= residual_norm / delta on the contour Re z = delta.
double aposteriori_bound(double residual_norm, double delta);

/// (s - A)^m x by m successive applications.
Eigen::VectorXcd apply_shift_poly(const GeneratorBackend& backend,
                                  const Eigen::VectorXcd& x, double s, int m);

/// Sup-norm of (2*delta - A)^m x, the amplitude factor of every bound.
double graph_norm(const GeneratorBackend& backend, const Eigen::VectorXd& x,
                  double delta, int m);

}  // namespace operators

/// Dense backend over an explicit real matrix A; shifted solves use
/// partial-pivoted LU. Intended for 1D collocation discretizations.
class DenseBackend : public GeneratorBackend {
 public:
  DenseBackend(Eigen::MatrixXd a, SemigroupConstants c);

  Eigen::Index dimension() const override { return a_.rows(); }
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const override;
  Eigen::VectorXcd solve(std::complex<double> z,
                         const Eigen::VectorXcd& rhs) const override;

  const Eigen::MatrixXd& matrix() const noexcept { return a_; }

 private:
  Eigen::MatrixXd a_;
};

/// Sparse backend over a real sparse A; shifted solves use UMFPACK
/// multifrontal LU. Intended for 2D finite-difference discretizations.
class SparseBackend : public GeneratorBackend {
 public:
  SparseBackend(Eigen::SparseMatrix<double> a,
                SemigroupConstants c);

  Eigen::Index dimension() const override { return a_.rows(); }
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const override;
  Eigen::VectorXcd solve(std::complex<double> z,
                         const Eigen::VectorXcd& rhs) const override;

  const Eigen::SparseMatrix<double>& matrix()
      const noexcept {
    return a_;
  }

 private:
  Eigen::SparseMatrix<double> a_;
};

}  // namespace sgq
