#pragma once

// Koopman generator backends A = F(x) . grad on 1D Chebyshev collocation
// grids and 2D second-order finite-difference grids.

#include <functional>

#include "sgquad/operators.hpp"

namespace sgq {

/// Chebyshev points of the second kind, x_j = cos(j*pi/n), j = 0..n
/// (descending from 1 to -1).
Eigen::VectorXd chebyshev_points(int n);

/// Differentiation matrix on chebyshev_points(n); exact for polynomials
/// of degree <= n.
Eigen::MatrixXd chebyshev_diff_matrix(int n);

/// Barycentric interpolation of values given at Chebyshev points of the
/// second kind onto arbitrary query points in [-1, 1].
Eigen::VectorXcd barycentric_interpolate(const Eigen::VectorXd& nodes,
                                         const Eigen::VectorXcd& values,
                                         const Eigen::VectorXd& queries);

/// Grid description of the domain and velocity field F.
struct DiscreteField {
  int dim = 1;

  // 1D: collocation degree (n+1 points) on [-1, 1].
  int degree = 0;
  std::function<double(double)> velocity;

  // 2D: n1 x n2 equispaced points on [-lx, lx] x [-ly, ly].
  int n1 = 0, n2 = 0;
  double lx = 1.0, ly = 1.0;
  std::function<double(double, double)> velocity_x, velocity_y;
};

/// 1D Koopman backend A = diag(F(x_i)) * D with D the Chebyshev
/// differentiation matrix. Requires F to point inward at both endpoints
/// (F(1) <= 0 <= F(-1)); no boundary rows are modified.
class Koopman1D : public DenseBackend {
 public:
  explicit Koopman1D(const DiscreteField& field);
  const Eigen::VectorXd& nodes() const noexcept { return nodes_; }

 private:
  Eigen::VectorXd nodes_;
};

/// 2D Koopman backend A = F1 d/dx + F2 d/dy, centered second-order
/// differences in the interior and one-sided second-order stencils on
/// the boundary. Intended for compact-support observables; no boundary
/// condition rows are imposed.
class Koopman2D : public SparseBackend {
 public:
  explicit Koopman2D(const DiscreteField& field);

  const Eigen::VectorXd& xgrid() const noexcept { return x_; }
  const Eigen::VectorXd& ygrid() const noexcept { return y_; }
  /// Flattened index of grid point (i, j) = (x_i, y_j).
  Eigen::Index flat_index(int i, int j) const noexcept {
    return Eigen::Index(i) * y_.size() + j;
  }

 private:
  Eigen::VectorXd x_, y_;
};

Koopman1D build_koopman_1d(const DiscreteField& field);
Koopman2D build_koopman_2d(const DiscreteField& field);

}  // namespace sgq
