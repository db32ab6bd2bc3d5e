#pragma once

// Special-function kernel used by the quadrature error bounds: the gamma
// ratio G(m) = Gamma(3/2)Gamma((m-1)/2)/Gamma(m/2), the tail integral
// T_m(y) = int_y^inf (1+s^2)^{-m/2} ds, and the associated Gauss
// hypergeometric values 2F1(1/2, m/2; 3/2; -y^2). Everything here is
// restricted to even integer orders m >= 2, where these functions reduce
// to elementary closed forms.

#include <stdexcept>

namespace sgq {

/// Even integer order m >= 2 of the rational regularizer (2*delta - z)^{-m}.
class EvenOrder {
 public:
  explicit EvenOrder(int m) : m_(m) {
    if (m < 2 || m % 2 != 0)
      throw std::invalid_argument("EvenOrder: m must be even and >= 2");
  }
  int value() const noexcept { return m_; }
  friend bool operator==(EvenOrder a, EvenOrder b) noexcept {
    return a.m_ == b.m_;
  }

 private:
  int m_;
};

namespace hypergeo {

/// G(m) = Gamma(3/2)Gamma((m-1)/2)/Gamma(m/2), evaluated by the exact
/// product recurrence G(2) = pi/2, G(m) = G(m-2)*(m-3)/(m-2).
double gamma_ratio(EvenOrder m);

/// Tail integral T_m(y) = int_y^inf (1+s^2)^{-m/2} ds for y >= 0.
/// Strictly decreasing in y with T_m(0) = gamma_ratio(m).
double hyp_tail(EvenOrder m, double y);

/// 2F1(1/2, m/2; 3/2; -y^2) for y >= 0. Equals 1 at y = 0.
double hyp2f1_half(EvenOrder m, double y);

/// Leading term (1/(m-1)) * y^{-(m-1)} of T_m(y) as y -> infinity.
double tail_leading_order(EvenOrder m, double y);

}  // namespace hypergeo
}  // namespace sgq
