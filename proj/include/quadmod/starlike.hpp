#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "quadmod/errors.hpp"

namespace quadmod {

// Distortion of the quasiconformal extension of a strongly starlike function
// of order alpha: K(alpha) = (1 + sin(pi alpha / 2)) / (1 - sin(pi alpha / 2)).
template <class Real>
Real K_of_order(Real alpha) {
  if (!(alpha > Real(0)) || !(alpha < Real(1))) {
    throw invalid_input("K_of_order: order must lie in (0, 1)");
  }
  const Real s = std::sin(std::numbers::pi_v<Real> * alpha / 2);
  return (Real(1) + s) / (Real(1) - s);
}

// Starlikeness order of the height-1 trapezoid with half-bases c <= d about
// the center -i s: tan(pi alpha / 2) is the max of the four slope bounds of
// the radial function.
template <class Real>
Real order_of_center(Real s, Real c, Real d) {
  if (!(s > Real(0)) || !(s < Real(1)) || !(c > Real(0)) || !(c <= d)) {
    throw invalid_input("order_of_center: require 0 < s < 1 and 0 < c <= d");
  }
  const Real q1 = c / s;
  const Real q2 = d / (Real(1) - s);
  const Real q3 = (Real(1) - s + (d - c) * d) / (c + (d - c) * s);
  const Real q4 = (s - (d - c) * c) / (c + (d - c) * s);
  const Real m = std::max({q1, q2, q3, q4});
  return Real(2) / std::numbers::pi_v<Real> * std::atan(m);
}

template <class Real>
struct StarlikeReport {
  Real s;            // center height: the center is -i s
  Real alpha_order;  // starlikeness order
  Real tau;          // tan(pi alpha_order / 2)
  Real qr_upper;     // (sqrt(1 + tau^2) + tau)^2
};

// Upper bound for the reflection coefficient of the trapezoidal curve.
template <class Real>
StarlikeReport<Real> qr_upper(Real c, Real d) {
  if (!(c > Real(0)) || !(c <= d)) throw invalid_input("qr_upper: require 0 < c <= d");
  StarlikeReport<Real> rep;
  rep.s = c / (c + d);
  rep.tau = std::max(c + d, (Real(1) - c * c + d * d) / (Real(2) * c));
  rep.alpha_order = Real(2) / std::numbers::pi_v<Real> * std::atan(rep.tau);
  const Real hyp = std::sqrt(Real(1) + rep.tau * rep.tau);
  rep.qr_upper = (hyp + rep.tau) * (hyp + rep.tau);
  return rep;
}

// Radial function of the trapezoid about -i s, piecewise over the corner
// angles tan(theta1) = s/c and tan(theta2) = (1-s)/d.
template <class Real>
Real radial_function(Real theta, Real s, Real c, Real d) {
  constexpr Real pi = std::numbers::pi_v<Real>;
  if (!(theta > -pi / 2) || !(theta < pi / 2)) {
    throw invalid_input("radial_function: require -pi/2 < theta < pi/2");
  }
  const Real theta1 = std::atan(s / c);
  const Real theta2 = std::atan((Real(1) - s) / d);
  if (theta > theta1) return s / std::sin(theta);
  if (theta < -theta2) return (Real(1) - s) / (-std::sin(theta));
  return ((Real(1) - s) * c + s * d) / (std::cos(theta) + (d - c) * std::sin(theta));
}

}  // namespace quadmod
