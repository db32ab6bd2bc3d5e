#include "doctest.h"

#include <cmath>
#include <random>

#include "sgquad/params.hpp"

using namespace sgq;

TEST_CASE("spacing inversion hits half the tolerance exactly") {
  SemigroupConstants c;
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> ud(-1.0, 1.0), ue(-10.0, -0.5),
      un(-3.0, 5.0), ut(0.1, 3.0);
  std::uniform_int_distribution<int> um(1, 5);
  for (int i = 0; i < 300; ++i) {
    double d = std::pow(10.0, ud(rng));
    double eps = std::pow(10.0, ue(rng));
    double norm = std::pow(10.0, un(rng));
    double T = ut(rng);
    EvenOrder m(2 * um(rng));
    double h = params::spacing_for_tolerance(eps, d, m, T, c, norm);
    CHECK(h > 0.0);
    double ed = bounds::disc_bound_m(c, d, m, T, h, norm);
    CHECK(ed == doctest::Approx(eps / 2).epsilon(1e-10));
  }
}

TEST_CASE("node count is the minimal one for the leading-order bound") {
  SemigroupConstants c;
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> ud(-0.5, 1.0), ue(-8.0, -1.0);
  std::uniform_int_distribution<int> um(1, 4);
  for (int i = 0; i < 200; ++i) {
    double d = std::pow(10.0, ud(rng));
    double eps = std::pow(10.0, ue(rng));
    EvenOrder m(2 * um(rng));
    double h = params::spacing_for_tolerance(eps, d, m, 1.0, c, 1.0);
    long n = params::nodes_for_tolerance(eps, d, m, 1.0, c, 1.0, h,
                                         long(1e16));
    CHECK(bounds::trunc_bound_asymptotic(c, d, m, 1.0, h, n, 1.0) <= eps / 2);
    if (n > 1)
      CHECK(bounds::trunc_bound_asymptotic(c, d, m, 1.0, h, n - 1, 1.0) >
            eps / 2);
  }
}

TEST_CASE("node budget overflow reports infeasibility") {
  SemigroupConstants c;
  EvenOrder m(2);
  double d = 1e-3, eps = 1e-12;
  double h = params::spacing_for_tolerance(eps, d, m, 1.0, c, 1.0);
  CHECK_THROWS_AS(params::nodes_for_tolerance(eps, d, m, 1.0, c, 1.0, h),
                  PlanInfeasible);
  // A milder target is feasible once the budget is raised.
  double eps2 = 1e-8;
  double h2 = params::spacing_for_tolerance(eps2, d, m, 1.0, c, 1.0);
  CHECK_THROWS_AS(params::nodes_for_tolerance(eps2, d, m, 1.0, c, 1.0, h2),
                  PlanInfeasible);
  CHECK_NOTHROW(params::nodes_for_tolerance(eps2, d, m, 1.0, c, 1.0, h2,
                                            long(1e16)));
}

TEST_CASE("optimized spacing is a bracket-wide minimum") {
  SemigroupConstants c;
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> ud(-1.0, 1.0), un(-2.0, 4.0),
      ut(0.0, 2.0);
  std::uniform_int_distribution<int> um(1, 4), uN(1, 4);
  for (int i = 0; i < 50; ++i) {
    double d = std::pow(10.0, ud(rng));
    double norm = std::pow(10.0, un(rng));
    double t = ut(rng);
    EvenOrder m(2 * um(rng));
    long n = std::lround(std::pow(10.0, uN(rng)));
    double h = params::optimize_spacing(n, d, m, t, c, norm);
    auto total = [&](double hh) {
      return bounds::total_budget_m(c, d, m, t, hh, n, norm).total;
    };
    double best = total(h);
    if (!std::isfinite(best)) continue;
    // no dense probe of the bracket may beat the optimizer materially
    for (int j = 0; j <= 200; ++j) {
      double hh = 1e-4 * d * std::pow(1e5, j / 200.0);
      double probe = total(hh);
      if (!std::isfinite(probe)) continue;
      CHECK(best <= probe * (1.0 + 1e-6));
    }
  }
}

TEST_CASE("plan satisfies the target tolerance with the exact bounds") {
  SemigroupConstants c;
  for (double eps : {1e-1, 1e-3, 1e-6, 1e-8}) {
    for (int m_raw : {2, 4, 6, 8}) {
      EvenOrder m(m_raw);
      double norm = std::pow(2.0, m_raw - 2);
      ContourPlan p = params::plan(eps, 2.0, m, 1.0, c, norm, long(1e12));
      CHECK(p.delta == 2.0);
      CHECK(p.t_max == 1.0);
      double slack = eps / 2 * (1.0 + 1.0 / double(p.n_half));
      CHECK(bounds::disc_bound_m(c, 2.0, m, 1.0, p.h, norm) <=
            eps / 2 * (1 + 1e-12));
      CHECK(bounds::trunc_bound_m(c, 2.0, m, 1.0, p.h, p.n_half, norm) <=
            slack);
    }
  }
}

TEST_CASE("contour plan validation") {
  ContourPlan p;
  p.delta = 2.0;
  p.h = 0.5;
  p.n_half = 10;
  p.t_max = 1.0;
  CHECK_NOTHROW(p.validate());
  p.h = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.h = 0.5;
  p.n_half = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
