#include "sgquad/discretize.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace sgq {

namespace {

constexpr double kPi = std::numbers::pi;

// Second-order first-derivative stencil at point p of an n-point
// equispaced line: centered in the interior, one-sided at the ends.
template <typename ColFn>
void add_d1_stencil(std::vector<Eigen::Triplet<double>>& trips,
                    Eigen::Index row, int p, int n, double dx, double coef,
                    ColFn col) {
  if (coef == 0.0) return;
  if (p > 0 && p < n - 1) {
    trips.emplace_back(row, col(p - 1), -coef * 0.5 / dx);
    trips.emplace_back(row, col(p + 1), coef * 0.5 / dx);
  } else if (p == 0) {
    trips.emplace_back(row, col(0), -coef * 1.5 / dx);
    trips.emplace_back(row, col(1), coef * 2.0 / dx);
    trips.emplace_back(row, col(2), -coef * 0.5 / dx);
  } else {
    trips.emplace_back(row, col(n - 1), coef * 1.5 / dx);
    trips.emplace_back(row, col(n - 2), -coef * 2.0 / dx);
    trips.emplace_back(row, col(n - 3), coef * 0.5 / dx);
  }
}

}  // namespace

Eigen::VectorXd chebyshev_points(int n) {
  if (n < 1) throw std::invalid_argument("chebyshev_points: require n >= 1");
  Eigen::VectorXd x(n + 1);
  for (int j = 0; j <= n; ++j) x[j] = std::cos(kPi * j / n);
  return x;
}

Eigen::MatrixXd chebyshev_diff_matrix(int n) {
  const Eigen::VectorXd x = chebyshev_points(n);
  Eigen::VectorXd c(n + 1);
  for (int j = 0; j <= n; ++j)
    c[j] = ((j == 0 || j == n) ? 2.0 : 1.0) * ((j % 2 == 0) ? 1.0 : -1.0);
  Eigen::MatrixXd d(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      if (i != j) d(i, j) = c[i] / c[j] / (x[i] - x[j]);
  // Negative-sum trick for the diagonal.
  for (int i = 0; i <= n; ++i) {
    double s = 0.0;
    for (int j = 0; j <= n; ++j)
      if (i != j) s += d(i, j);
    d(i, i) = -s;
  }
  return d;
}

Eigen::VectorXcd barycentric_interpolate(const Eigen::VectorXd& nodes,
                                         const Eigen::VectorXcd& values,
                                         const Eigen::VectorXd& queries) {
  const Eigen::Index n = nodes.size() - 1;
  if (values.size() != nodes.size())
    throw std::invalid_argument("barycentric_interpolate: size mismatch");
  Eigen::VectorXcd out(queries.size());
  for (Eigen::Index q = 0; q < queries.size(); ++q) {
    const double xq = queries[q];
    std::complex<double> num = 0.0, den = 0.0;
    bool hit = false;
    for (Eigen::Index j = 0; j <= n; ++j) {
      const double diff = xq - nodes[j];
      if (diff == 0.0) {
        out[q] = values[j];
        hit = true;
        break;
      }
      double w = (j % 2 == 0) ? 1.0 : -1.0;
      if (j == 0 || j == n) w *= 0.5;
      num += w / diff * values[j];
      den += w / diff;
    }
    if (!hit) out[q] = num / den;
  }
  return out;
}

Koopman1D::Koopman1D(const DiscreteField& field)
    : DenseBackend(
          [&field]() -> Eigen::MatrixXd {
            if (field.dim != 1 || field.degree < 1 || !field.velocity)
              throw std::invalid_argument("Koopman1D: bad field description");
            if (field.velocity(1.0) > 0.0 || field.velocity(-1.0) < 0.0)
              throw std::invalid_argument(
                  "Koopman1D: velocity must point inward at x = +-1");
            const Eigen::VectorXd x = chebyshev_points(field.degree);
            Eigen::MatrixXd a = chebyshev_diff_matrix(field.degree);
            for (Eigen::Index i = 0; i < x.size(); ++i)
              a.row(i) *= field.velocity(x[i]);
            return a;
          }(),
          SemigroupConstants{1.0, 0.0}),
      nodes_(chebyshev_points(field.degree)) {}

Koopman2D::Koopman2D(const DiscreteField& field)
    : SparseBackend(
          [&field]() -> Eigen::SparseMatrix<double> {
            if (field.dim != 2 || field.n1 < 3 || field.n2 < 3 ||
                !field.velocity_x || !field.velocity_y)
              throw std::invalid_argument("Koopman2D: bad field description");
            const int n1 = field.n1, n2 = field.n2;
            const double dx = 2.0 * field.lx / (n1 - 1);
            const double dy = 2.0 * field.ly / (n2 - 1);
            std::vector<Eigen::Triplet<double>> trips;
            trips.reserve(std::size_t(n1) * n2 * 6);
            auto idx = [n2](int i, int j) { return Eigen::Index(i) * n2 + j; };
            for (int i = 0; i < n1; ++i) {
              const double xi = -field.lx + i * dx;
              for (int j = 0; j < n2; ++j) {
                const double yj = -field.ly + j * dy;
                const Eigen::Index row = idx(i, j);
                add_d1_stencil(trips, row, i, n1, dx,
                               field.velocity_x(xi, yj),
                               [&](int p) { return idx(p, j); });
                add_d1_stencil(trips, row, j, n2, dy,
                               field.velocity_y(xi, yj),
                               [&](int p) { return idx(i, p); });
              }
            }
            Eigen::SparseMatrix<double> a(Eigen::Index(n1) * n2,
                                          Eigen::Index(n1) * n2);
            a.setFromTriplets(trips.begin(), trips.end());
            return a;
          }(),
          SemigroupConstants{1.0, 0.0}),
      x_(Eigen::VectorXd::LinSpaced(field.n1, -field.lx, field.lx)),
      y_(Eigen::VectorXd::LinSpaced(field.n2, -field.ly, field.ly)) {}

Koopman1D build_koopman_1d(const DiscreteField& field) {
  return Koopman1D(field);
}

Koopman2D build_koopman_2d(const DiscreteField& field) {
  return Koopman2D(field);
}

}  // namespace sgq
