#include "doctest.h"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "sgquad/hypergeo.hpp"

using namespace sgq;
namespace {

// Adaptive Simpson quadrature, used as an independent oracle for the
// tail integral. The infinite range is mapped to [0,1) by
// s = y + u/(1-u), ds = du/(1-u)^2.
double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb, double whole, double tol,
               int depth) {
  double m = (a + b) / 2;
  double lm = (a + m) / 2, rm = (m + b) / 2;
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6 * (fa + 4 * flm + fm);
  double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol)
    return left + right + (left + right - whole) / 15;
  return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double adaptive_quad(const std::function<double(double)>& f, double a,
                     double b, double tol) {
  double fa = f(a), fb = f(b), fm = f((a + b) / 2);
  double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 50);
}

double tail_oracle(int m, double y) {
  auto integrand = [&](double u) {
    if (u >= 1.0) return 0.0;
    double s = y + u / (1.0 - u);
    double jac = 1.0 / ((1.0 - u) * (1.0 - u));
    return std::pow(1.0 + s * s, -m / 2.0) * jac;
  };
  return adaptive_quad(integrand, 0.0, 1.0 - 1e-12, 1e-14);
}

}  // namespace

TEST_CASE("even order validation") {
  CHECK_THROWS_AS(EvenOrder(3), std::invalid_argument);
  CHECK_THROWS_AS(EvenOrder(0), std::invalid_argument);
  CHECK_THROWS_AS(EvenOrder(-2), std::invalid_argument);
  CHECK(EvenOrder(2).value() == 2);
  CHECK(EvenOrder(12).value() == 12);
  CHECK(EvenOrder(2) == EvenOrder(2));
}

TEST_CASE("gamma ratio special values") {
  CHECK(hypergeo::gamma_ratio(EvenOrder(2)) ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  // Gamma(3/2)Gamma(3/2)/Gamma(2) = pi/4
  CHECK(hypergeo::gamma_ratio(EvenOrder(4)) ==
        doctest::Approx(std::numbers::pi / 4).epsilon(1e-14));
}

TEST_CASE("gamma ratio against lgamma") {
  for (int m = 2; m <= 60; m += 2) {
    double expected = std::exp(std::lgamma(1.5) + std::lgamma((m - 1) / 2.0) -
                               std::lgamma(m / 2.0));
    CHECK(hypergeo::gamma_ratio(EvenOrder(m)) ==
          doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("tail integral against adaptive quadrature") {
  for (int m = 2; m <= 12; m += 2) {
    double g = hypergeo::gamma_ratio(EvenOrder(m));
    for (double y : {0.0, 0.1, 1.0, 10.0, 100.0}) {
      double exact = tail_oracle(m, y);
      double got = hypergeo::hyp_tail(EvenOrder(m), y);
      CHECK(std::abs(got - exact) <= 1e-10 * g);
    }
  }
}

TEST_CASE("tail at zero is the full integral") {
  for (int m = 2; m <= 20; m += 2)
    CHECK(hypergeo::hyp_tail(EvenOrder(m), 0.0) ==
          doctest::Approx(hypergeo::gamma_ratio(EvenOrder(m))).epsilon(1e-14));
}

TEST_CASE("tail monotonicity and domination by leading order") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> logy(-2.0, 4.0);
  for (int m = 2; m <= 12; m += 2) {
    for (int i = 0; i < 200; ++i) {
      double y = std::pow(10.0, logy(rng));
      EvenOrder order(m);
      double t = hypergeo::hyp_tail(order, y);
      CHECK(t > 0.0);
      CHECK(t < hypergeo::hyp_tail(order, y * 0.99));
      // (1+s^2)^{m/2} >= s^m pointwise, so the exact tail never exceeds
      // its leading-order form.
      CHECK(t <= hypergeo::tail_leading_order(order, y));
    }
  }
}

TEST_CASE("leading order is asymptotically exact") {
  for (int m = 2; m <= 10; m += 2) {
    double y = 1e4;
    double ratio = hypergeo::hyp_tail(EvenOrder(m), y) /
                   hypergeo::tail_leading_order(EvenOrder(m), y);
    CHECK(ratio == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("hypergeometric form is consistent with the tail") {
  // T_m(y) = G(m) - y * 2F1-type series; both sides are computed through
  // different code paths for small y.
  for (int m = 2; m <= 12; m += 2) {
    EvenOrder order(m);
    double g = hypergeo::gamma_ratio(order);
    for (double y : {1e-6, 1e-3, 5e-3, 2e-2, 0.5, 2.0}) {
      double lhs = hypergeo::hyp_tail(order, y);
      double rhs = g - y * hypergeo::hyp2f1_half(order, y);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("invalid arguments are rejected") {
  CHECK_THROWS_AS(hypergeo::hyp_tail(EvenOrder(2), -1.0), std::domain_error);
  CHECK_THROWS_AS(hypergeo::hyp_tail(EvenOrder(2), std::nan("")),
                  std::domain_error);
  CHECK_THROWS_AS(hypergeo::tail_leading_order(EvenOrder(2), 0.0),
                  std::domain_error);
}
