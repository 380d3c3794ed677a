#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "quadmod/bisect.hpp"
#include "quadmod/errors.hpp"

namespace quadmod {

// sqrt(1 - x^2) without cancellation for x near 1
template <class Real>
Real comp_modulus(Real x) {
  return std::sqrt((Real(1) - x) * (Real(1) + x));
}

namespace detail {

template <class Real>
Real agm(Real a, Real b) {
  using std::abs;
  for (int i = 0; i < 64 && abs(a - b) > std::numeric_limits<Real>::epsilon() * abs(a); ++i) {
    const Real an = (a + b) / 2;
    b = std::sqrt(a * b);
    a = an;
  }
  return (a + b) / 2;
}

}  // namespace detail

// Complete elliptic integral of the first kind, modulus convention:
// K(lambda) = integral_0^1 dt / sqrt((1-t^2)(1-lambda^2 t^2)).
template <class Real>
Real ellip_K(Real lambda) {
  if (!(lambda >= Real(0)) || lambda >= Real(1) - Real(1e-16)) {
    throw invalid_input("ellip_K: modulus must lie in [0, 1 - 1e-16)");
  }
  return std::numbers::pi_v<Real> / (Real(2) * detail::agm(Real(1), comp_modulus(lambda)));
}

// Complete elliptic integral of the second kind (modulus convention).
template <class Real>
Real ellip_E(Real lambda) {
  if (!(lambda >= Real(0)) || lambda > Real(1)) {
    throw invalid_input("ellip_E: modulus must lie in [0, 1]");
  }
  if (lambda == Real(1)) return Real(1);
  // AGM with the c-sum: E = K (1 - sum 2^{n-1} c_n^2), c_0 = lambda
  using std::abs;
  Real a = Real(1);
  Real b = comp_modulus(lambda);
  Real c = lambda;
  Real csum = c * c / 2;
  Real pw = Real(1);
  for (int i = 0; i < 64 && abs(c) > std::numeric_limits<Real>::epsilon() * a; ++i) {
    c = (a - b) / 2;
    const Real an = (a + b) / 2;
    b = std::sqrt(a * b);
    a = an;
    csum += pw * c * c;
    pw *= Real(2);
  }
  const Real K = std::numbers::pi_v<Real> / (Real(2) * a);
  return K * (Real(1) - csum);
}

// Decreasing homeomorphism mu : (0,1) -> (0,inf),
// mu(r) = (pi/2) K(r') / K(r), evaluated through the AGM ratio so that both
// extremes of r stay representable.
template <class Real>
Real mu(Real r) {
  if (!(r > Real(0)) || !(r < Real(1))) {
    throw invalid_input("mu: argument must lie in (0, 1)");
  }
  const Real rp = comp_modulus(r);
  return std::numbers::pi_v<Real> / 2 * detail::agm(Real(1), rp) / detail::agm(Real(1), r);
}

// Inverse of mu by bisection.
template <class Real>
Real mu_inv(Real y) {
  if (!(y > Real(0))) throw invalid_input("mu_inv: argument must be positive");
  Real lo = Real(1e-12);
  Real hi = Real(1) - Real(1e-12);
  // mu is decreasing: widen until mu(lo) > y > mu(hi)
  for (int i = 0; i < 600 && mu(lo) < y; ++i) lo /= 2;
  for (int i = 0; i < 60; ++i) {
    if (Real(1) - hi <= Real(8) * std::numeric_limits<Real>::epsilon() || mu(hi) <= y) break;
    hi += (Real(1) - hi) / 2;
  }
  return bisect([&](Real r) { return mu(r) - y; }, lo, hi,
                std::numeric_limits<Real>::epsilon());
}

}  // namespace quadmod
