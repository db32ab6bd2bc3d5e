#include "sgquad/hypergeo.hpp"

#include <cmath>

namespace sgq::hypergeo {

double gamma_ratio(EvenOrder m) {
  // G(2) = Gamma(3/2)Gamma(1/2)/Gamma(1) = pi/2 and
  // G(m)/G(m-2) = Gamma((m-1)/2)/Gamma((m-3)/2) * Gamma((m-2)/2)/Gamma(m/2)
  //             = ((m-3)/2) / ((m-2)/2).
  double g = 2.0 * std::atan(1.0);  // pi/2
  for (int j = 4; j <= m.value(); j += 2) g *= double(j - 3) / double(j - 2);
  return g;
}

double hyp_tail(EvenOrder m, double y) {
  if (std::isnan(y) || y < 0.0)
    throw std::domain_error("hyp_tail: require y >= 0");
  // With n = m/2, the antiderivative of (1+s^2)^{-n} satisfies
  //   J_n(s) = s/(2(n-1)(1+s^2)^{n-1}) + (2n-3)/(2(n-1)) * J_{n-1}(s),
  // J_1(s) = arctan(s). Taking T_n(y) = J_n(inf) - J_n(y) gives
  //   T_1(y) = arctan(1/y),
  //   T_n(y) = (2n-3)/(2(n-1)) * T_{n-1}(y) - y/(2(n-1)(1+y^2)^{n-1}).
  const int n = m.value() / 2;
  // The downward recurrence cancels catastrophically once y is large
  // (both terms approach y^{-(m-1)}/(m-1)). There the binomial expansion
  // of (1+s^2)^{-n} = s^{-2n}(1+s^{-2})^{-n} integrates termwise into an
  // alternating series with geometrically decreasing terms:
  //   T_m(y) = sum_j (-1)^j C(n+j-1, j) y^{-(m-1+2j)} / (m-1+2j).
  if (y * y >= m.value()) {
    double coef = 1.0;                              // C(n+j-1, j)
    double pw = std::pow(y, -(m.value() - 1));      // y^{-(m-1+2j)}
    const double y2 = y * y;
    double sum = 0.0;
    for (int j = 0; j < 200; ++j) {
      double term = coef * pw / double(m.value() - 1 + 2 * j);
      sum += (j % 2 == 0) ? term : -term;
      if (term < 1e-18 * sum) break;
      coef *= double(n + j) / double(j + 1);
      pw /= y2;
    }
    return sum;
  }
  double t = (y == 0.0) ? 2.0 * std::atan(1.0) : std::atan(1.0 / y);
  double pw = 1.0;  // (1+y^2)^{k-1}
  const double y2p1 = 1.0 + y * y;
  for (int k = 2; k <= n; ++k) {
    pw *= y2p1;
    t = (2.0 * k - 3.0) / (2.0 * (k - 1.0)) * t - y / (2.0 * (k - 1.0) * pw);
  }
  return t;
}

double hyp2f1_half(EvenOrder m, double y) {
  if (std::isnan(y) || y < 0.0)
    throw std::domain_error("hyp2f1_half: require y >= 0");
  // Small arguments go through the defining series to avoid the
  // cancellation in (G - T_m(y))/y when T_m(y) ~ G.
  if (y < 1e-2) {
    const double z = -y * y;
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 32; ++k) {
      term *= (0.5 + k) * (0.5 * m.value() + k) / ((1.5 + k) * (k + 1.0)) * z;
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return (gamma_ratio(m) - hyp_tail(m, y)) / y;
}

double tail_leading_order(EvenOrder m, double y) {
  if (!(y > 0.0)) throw std::domain_error("tail_leading_order: require y > 0");
  return std::pow(y, -(m.value() - 1)) / double(m.value() - 1);
}

}  // namespace sgq::hypergeo
