#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "quadmod/bisect.hpp"
#include "quadmod/elliptic.hpp"
#include "quadmod/errors.hpp"

namespace quadmod {

// Half-plane parameter of the rectangle exterior: k = (sqrt(t)-1)/(sqrt(t)+1).
template <class Real>
Real k_of_t(Real t) {
  if (!(t > Real(1))) throw invalid_input("k_of_t: require t > 1");
  const Real s = std::sqrt(t);
  return (s - Real(1)) / (s + Real(1));
}

// Aspect ratio of the rectangle whose exterior maps from the half-plane with
// parameter k: H = 2 (E(k) - (1-k) K(k)) / (E'(k) - k K'(k)).
template <class Real>
Real dp_height(Real k) {
  if (!(k > Real(0)) || !(k < Real(1))) throw invalid_input("dp_height: require 0 < k < 1");
  const Real kp = comp_modulus(k);
  const Real num = Real(2) * (ellip_E(k) - (Real(1) - k) * ellip_K(k));
  const Real den = ellip_E(kp) - k * ellip_K(kp);
  return num / den;
}

// DP(h) = mu(psi^{-1}(h)) / pi where psi = dp_height; equals the exterior
// modulus of the rectangle with vertices 0, 1, 1+ih, ih.
template <class Real>
Real dp_modulus_of_height(Real h) {
  if (!(h > Real(0))) throw invalid_input("dp_modulus_of_height: require h > 0");
  // psi(k) ~ pi k near 0 and diverges at 1; keep k' clear of the K guard.
  Real lo = std::min(Real(0.5), h / Real(10));
  Real hi = Real(1) - Real(1e-8);
  for (int i = 0; i < 60 && lo > Real(1e-7) && dp_height(lo) > h; ++i) lo /= 2;
  for (int i = 0; i < 30 && Real(1) - hi > Real(1e-14) && dp_height(hi) < h; ++i) {
    hi += (Real(1) - hi) / 2;
  }
  if (dp_height(lo) > h || dp_height(hi) < h) {
    throw bracket_error("dp_modulus_of_height: psi inversion bracket failed");
  }
  const Real r = bisect([&](Real x) { return dp_height(x) - h; }, lo, hi,
                        std::numeric_limits<Real>::epsilon());
  return mu(r) / std::numbers::pi_v<Real>;
}

}  // namespace quadmod
