#include "sgquad/operators.hpp"

#include <Eigen/UmfPackSupport>
#include <cmath>

namespace sgq {

namespace operators {

double sup_norm(const Eigen::VectorXd& x) {
  return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
}

double sup_norm(const Eigen::VectorXcd& x) {
  return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
}

ShiftedSolve solve_shifted(const GeneratorBackend& backend,
                           std::complex<double> z,
                           const Eigen::VectorXcd& x) {
  if (!(z.real() > 0.0))
    throw std::domain_error("solve_shifted: require Re z > 0");
  Eigen::VectorXcd u = backend.solve(z, x);
  Eigen::VectorXcd residual = z * u - backend.apply(u) - x;
  return ShiftedSolve{std::move(u), sup_norm(residual)};
}

double aposteriori_bound(double residual_norm, double delta) {
  if (!(delta > 0.0))
    throw std::domain_error("aposteriori_bound: require delta > 0");
  return residual_norm / delta;
}

Eigen::VectorXcd apply_shift_poly(const GeneratorBackend& backend,
                                  const Eigen::VectorXcd& x, double s, int m) {
  if (m < 0) throw std::domain_error("apply_shift_poly: require m >= 0");
  Eigen::VectorXcd v = x;
  for (int i = 0; i < m; ++i) v = s * v - backend.apply(v);
  return v;
}

double graph_norm(const GeneratorBackend& backend, const Eigen::VectorXd& x,
                  double delta, int m) {
  if (!(delta > 0.0)) throw std::domain_error("graph_norm: require delta > 0");
  return sup_norm(apply_shift_poly(backend, x.cast<std::complex<double>>(),
                                   2.0 * delta, m));
}

}  // namespace operators

// ---- DenseBackend ----

DenseBackend::DenseBackend(Eigen::MatrixXd a, SemigroupConstants c)
    : GeneratorBackend(c), a_(std::move(a)) {
  if (a_.rows() != a_.cols())
    throw std::invalid_argument("DenseBackend: matrix must be square");
}

Eigen::VectorXcd DenseBackend::apply(const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd out(v.size());
  out.real() = a_ * v.real();
  out.imag() = a_ * v.imag();
  return out;
}

Eigen::VectorXcd DenseBackend::solve(std::complex<double> z,
                                     const Eigen::VectorXcd& rhs) const {
  count_solve();
  Eigen::MatrixXcd shifted = (-a_).cast<std::complex<double>>();
  shifted.diagonal().array() += z;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
  Eigen::VectorXcd u = lu.solve(rhs);
  if (!u.allFinite())
    throw std::runtime_error("DenseBackend: singular shifted system");
  return u;
}

// ---- SparseBackend ----

SparseBackend::SparseBackend(Eigen::SparseMatrix<double> a,
                             SemigroupConstants c)
    : GeneratorBackend(c), a_(std::move(a)) {
  if (a_.rows() != a_.cols())
    throw std::invalid_argument("SparseBackend: matrix must be square");
  a_.makeCompressed();
}

Eigen::VectorXcd SparseBackend::apply(const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd out(v.size());
  out.real() = a_ * v.real();
  out.imag() = a_ * v.imag();
  return out;
}

Eigen::VectorXcd SparseBackend::solve(std::complex<double> z,
                                      const Eigen::VectorXcd& rhs) const {
  count_solve();
  using SpMatC = Eigen::SparseMatrix<std::complex<double>>;
  SpMatC shifted = (-a_).cast<std::complex<double>>();
  SpMatC eye(a_.rows(), a_.cols());
  eye.setIdentity();
  shifted += z * eye;
  shifted.makeCompressed();
  Eigen::UmfPackLU<SpMatC> lu;
  lu.compute(shifted);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("SparseBackend: factorization failed");
  Eigen::VectorXcd u = lu.solve(rhs);
  if (!u.allFinite())
    throw std::runtime_error("SparseBackend: singular shifted system");
  return u;
}

}  // namespace sgq
