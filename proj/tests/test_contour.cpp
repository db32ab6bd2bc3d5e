#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "sgquad/contour.hpp"

using namespace sgq;
namespace {

ContourPlan simple_plan() {
  ContourPlan p;
  p.delta = 1.0;
  p.h = 0.25;
  p.n_half = 120;
  p.m = EvenOrder(4);
  p.t_max = 2.0;
  return p;
}

/// Scalar backend A = [a]; the semigroup is e^{a t}.
DenseBackend scalar_backend(double a) {
  Eigen::MatrixXd m(1, 1);
  m(0, 0) = a;
  return DenseBackend(m, SemigroupConstants{});
}

}  // namespace

TEST_CASE("node layout and coefficients") {
  ContourPlan p = simple_plan();
  auto ns = contour::nodes(p);
  CHECK(ns.size() == 241);
  CHECK(ns.front().k == -120);
  CHECK(ns.back().k == 120);
  for (const auto& n : ns) {
    CHECK(n.z.real() == p.delta);
    CHECK(n.z.imag() == doctest::Approx(p.h * double(n.k)));
  }
  // coefficient formula checked against plain complex arithmetic
  double t = 0.7;
  for (long k : {-120L, -3L, 0L, 5L, 120L}) {
    std::complex<double> z(p.delta, p.h * double(k));
    std::complex<double> denom =
        std::pow(std::complex<double>(p.delta, -p.h * double(k)), 4);
    std::complex<double> want =
        p.h / (2 * std::numbers::pi) * std::exp(z * t) / denom;
    std::complex<double> got = contour::coefficient(p, k, t);
    CHECK(std::abs(got - want) <= 1e-15 * std::abs(want));
  }
  CHECK(contour::coefficient_dynamic_range(p, t) >= 1.0);
}

TEST_CASE("scalar semigroup is reproduced within the budget") {
  DenseBackend backend = scalar_backend(-1.0);
  ContourPlan p = simple_plan();
  Eigen::VectorXd x = Eigen::VectorXd::Ones(1);
  double norm = operators::graph_norm(backend, x, p.delta, p.m.value());
  CHECK(norm == doctest::Approx(std::pow(3.0, 4)));  // (2*1 - (-1))^4

  ResolventSampleSet samples = contour::precompute(backend, x, p);
  for (double t : {0.0, 0.3, 1.0, 2.0}) {
    Eigen::VectorXd approx = contour::assemble(samples, t, backend);
    double budget = bounds::total_budget_m(backend.constants(), p.delta, p.m,
                                           t, p.h, p.n_half, norm)
                        .total;
    CHECK(std::abs(approx[0] - std::exp(-t)) <= budget);
  }
}

TEST_CASE("pre- and post-regularized strategies agree") {
  DenseBackend backend = scalar_backend(-0.5);
  ContourPlan p = simple_plan();
  Eigen::VectorXd x = Eigen::VectorXd::Ones(1);
  auto pre = contour::precompute(backend, x, p, Strategy::pre_regularized);
  auto post = contour::precompute(backend, x, p, Strategy::post_regularized);
  for (double t : {0.1, 1.0}) {
    double a = contour::assemble(pre, t, backend)[0];
    double b = contour::assemble(post, t, backend)[0];
    CHECK(a == doctest::Approx(b).epsilon(1e-10));
  }
}

TEST_CASE("conjugate symmetry halves the solve count") {
  DenseBackend backend = scalar_backend(-1.0);
  ContourPlan p = simple_plan();
  Eigen::VectorXd x = Eigen::VectorXd::Ones(1);
  ResolventSampleSet samples = contour::precompute(backend, x, p);
  CHECK(samples.conjugate_symmetric);
  CHECK(backend.solve_count() == p.n_half + 1);
  CHECK(samples.samples.size() == 2 * p.n_half + 1);
  for (long k = 1; k <= p.n_half; ++k) {
    const auto& up = samples.at(k);
    const auto& um = samples.at(-k);
    CHECK(um.u[0] == std::conj(up.u[0]));
    CHECK(um.residual_norm == up.residual_norm);
  }

  // complex input disables the symmetry
  Eigen::VectorXcd xc = Eigen::VectorXcd::Ones(1) * std::complex<double>(0, 1);
  ResolventSampleSet full = contour::precompute(backend, xc, p);
  CHECK(!full.conjugate_symmetric);
  CHECK(backend.solve_count() == (p.n_half + 1) + (2 * p.n_half + 1));
}

TEST_CASE("assembly reuses samples without new solves") {
  DenseBackend backend = scalar_backend(-1.0);
  ContourPlan p = simple_plan();
  Eigen::VectorXd x = Eigen::VectorXd::Ones(1);
  ResolventSampleSet samples = contour::precompute(backend, x, p);
  long solves = backend.solve_count();
  for (double t = 0.0; t <= 2.0; t += 0.25)
    contour::assemble(samples, t, backend);
  CHECK(backend.solve_count() == solves);
}

TEST_CASE("broken symmetry is detected at assembly") {
  DenseBackend backend = scalar_backend(-1.0);
  ContourPlan p = simple_plan();
  Eigen::VectorXd x = Eigen::VectorXd::Ones(1);
  ResolventSampleSet samples = contour::precompute(backend, x, p);
  samples.samples[10].u[0] += std::complex<double>(0.0, 0.1);
  samples.conjugate_symmetric = false;
  CHECK_THROWS_AS(contour::assemble(samples, 1.0, backend),
                  std::runtime_error);
}

TEST_CASE("residual ceiling raises the warning flag") {
  DenseBackend backend = scalar_backend(-1.0);
  ContourPlan p = simple_plan();
  Eigen::VectorXd x = Eigen::VectorXd::Ones(1);
  auto strict = contour::precompute(backend, x, p, Strategy::pre_regularized,
                                    1, /*residual_ceiling=*/1e-30);
  CHECK(strict.residual_warning);
  auto loose = contour::precompute(backend, x, p);
  CHECK(!loose.residual_warning);
  CHECK(loose.max_residual() < 1e-8);
}

TEST_CASE("worker count does not change the result") {
  Eigen::MatrixXd a = -Eigen::MatrixXd::Identity(6, 6);
  a(0, 1) = 0.25;
  DenseBackend backend(a, SemigroupConstants{});
  ContourPlan p = simple_plan();
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(6, -1.0, 1.0);
  auto one = contour::precompute(backend, x, p, Strategy::pre_regularized, 1);
  auto four = contour::precompute(backend, x, p, Strategy::pre_regularized, 4);
  REQUIRE(one.samples.size() == four.samples.size());
  for (size_t i = 0; i < one.samples.size(); ++i) {
    CHECK(one.samples[i].k == four.samples[i].k);
    CHECK((one.samples[i].u - four.samples[i].u).norm() == 0.0);  // bit-exact
  }
}

TEST_CASE("sample set round trips through the text container") {
  DenseBackend backend = scalar_backend(-1.0);
  ContourPlan p = simple_plan();
  Eigen::VectorXd x = Eigen::VectorXd::Ones(1);
  ResolventSampleSet samples =
      contour::precompute(backend, x, p, Strategy::pre_regularized, 1, 1e-8,
                          "unit-vector");
  auto path = std::filesystem::temp_directory_path() / "sgq_samples_test.txt";
  contour::save_samples(samples, path.string());
  ResolventSampleSet loaded = contour::load_samples(path.string());
  std::filesystem::remove(path);

  CHECK(loaded.plan.delta == samples.plan.delta);
  CHECK(loaded.plan.h == samples.plan.h);
  CHECK(loaded.plan.n_half == samples.plan.n_half);
  CHECK(loaded.plan.m == samples.plan.m);
  CHECK(loaded.plan.t_max == samples.plan.t_max);
  CHECK(loaded.strategy == samples.strategy);
  CHECK(loaded.conjugate_symmetric == samples.conjugate_symmetric);
  CHECK(loaded.x_tag == "unit-vector");
  REQUIRE(loaded.samples.size() == samples.samples.size());
  for (size_t i = 0; i < samples.samples.size(); ++i) {
    CHECK(loaded.samples[i].k == samples.samples[i].k);
    CHECK((loaded.samples[i].u - samples.samples[i].u).norm() == 0.0);
    CHECK(loaded.samples[i].residual_norm == samples.samples[i].residual_norm);
  }
  // assembly from the loaded set matches
  double a = contour::assemble(samples, 0.5, backend)[0];
  double b = contour::assemble(loaded, 0.5, backend)[0];
  CHECK(a == b);
}
