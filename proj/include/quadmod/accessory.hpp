#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "quadmod/errors.hpp"
#include "quadmod/hypergeometric.hpp"

namespace quadmod {

// Exterior-angle parameters of a convex polygonal quadrilateral; the exterior
// angle at vertex j is pi * (1 + parameter).
template <class Real>
struct AngleParams {
  Real alpha, beta, gamma, delta;
};

template <class Real>
void validate_angles(const AngleParams<Real>& ang) {
  const std::array<Real, 4> v = {ang.alpha, ang.beta, ang.gamma, ang.delta};
  for (const Real x : v) {
    if (!(x > Real(0.01)) || !(x < Real(0.99))) {
      throw invalid_input("angles: each parameter must lie in (0.01, 0.99); quadrilateral too "
                          "close to degenerate");
    }
  }
  if (std::abs(ang.alpha + ang.beta + ang.gamma + ang.delta - Real(2)) > Real(1e-12)) {
    throw invalid_input("angles: parameters must sum to 2");
  }
}

template <class Real>
struct CubicCoeffs {
  Real A, B, C, D;
};

// Coefficients of the cubic whose admissible root is Re z0.
template <class Real>
CubicCoeffs<Real> cubic_coeffs(const AngleParams<Real>& ang, Real t) {
  validate_angles(ang);
  if (!(t > Real(1))) throw invalid_input("cubic_coeffs: require t > 1");
  const Real a = ang.alpha, b = ang.beta, g = ang.gamma;
  const Real E = a + b + g - Real(1);
  CubicCoeffs<Real> c;
  c.A = Real(2) * (E - Real(1)) * (E - Real(1));
  c.B = (E - Real(1)) * (Real(4) - Real(3) * (a + g) + (Real(4) - Real(3) * (a + b)) * t);
  c.C = Real(2) - Real(3) * (a + g) + (a + g) * (a + g) +
        Real(2) * (Real(3) - Real(5) * a - Real(2) * b - Real(2) * g + Real(2) * a * a +
                   Real(2) * a * b + Real(2) * a * g + b * g) * t +
        (Real(2) - Real(3) * (a + b) + (a + b) * (a + b)) * t * t;
  c.D = (Real(1) - a) * (a + g - Real(1) + (a + b - Real(1)) * t) * t;
  return c;
}

// rho(x) = alpha t x / ((1-E) x + E(t+1) - gamma t - beta).  Callers that
// cannot rule out the denominator zero must use the cleared-denominator
// predicate instead of this quotient.
template <class Real>
Real rho(Real x, const AngleParams<Real>& ang, Real t) {
  const Real E = ang.alpha + ang.beta + ang.gamma - Real(1);
  const Real den = (Real(1) - E) * x + E * (t + Real(1)) - ang.gamma * t - ang.beta;
  const Real scale = std::abs((Real(1) - E) * x) + std::abs(E * (t + Real(1))) +
                     std::abs(ang.gamma * t) + std::abs(ang.beta);
  if (std::abs(den) <= Real(4) * std::numeric_limits<Real>::epsilon() * scale) {
    throw pole_error("rho: evaluated at the zero of its denominator");
  }
  return ang.alpha * t * x / den;
}

// |alpha/z0 + beta/(z0-1) + gamma/(z0-t) - 1/(i Im z0)|
template <class Real>
Real residue_defect(Complex<Real> z0, const AngleParams<Real>& ang, Real t) {
  using C = std::complex<long double>;
  const C z(static_cast<long double>(z0.real()), static_cast<long double>(z0.imag()));
  const long double a = static_cast<long double>(ang.alpha);
  const long double b = static_cast<long double>(ang.beta);
  const long double g = static_cast<long double>(ang.gamma);
  const long double tt = static_cast<long double>(t);
  const C lhs = a / z + b / (z - C(1)) + g / (z - C(tt));
  const C rhs = C(1) / C(0.0L, z.imag());
  return static_cast<Real>(std::abs(lhs - rhs));
}

template <class Real>
struct AccessorySolution {
  Real t;
  Real x0;
  Real y0;
  Complex<Real> z0;
  Real residual;  // achieved defect of the residue condition
};

namespace detail {

// Real roots of the monic cubic x^3 + b x^2 + c x + d, Newton-polished.
inline std::vector<long double> solve_cubic_monic(long double b, long double c, long double d) {
  constexpr long double pi = std::numbers::pi_v<long double>;
  const long double shift = b / 3.0L;
  const long double p = c - b * b / 3.0L;
  const long double q = 2.0L * b * b * b / 27.0L - b * c / 3.0L + d;

  std::vector<long double> roots;
  const long double disc = -4.0L * p * p * p - 27.0L * q * q;
  if (disc >= 0.0L && p < 0.0L) {
    const long double m = 2.0L * std::sqrt(-p / 3.0L);
    const long double arg = std::clamp(3.0L * q / (p * m), -1.0L, 1.0L);
    const long double theta = std::acos(arg);
    for (int k = 0; k < 3; ++k) {
      roots.push_back(m * std::cos(theta / 3.0L - 2.0L * pi * k / 3.0L) - shift);
    }
  } else {
    const long double s = std::sqrt(std::max(q * q / 4.0L + p * p * p / 27.0L, 0.0L));
    const long double u0 = -q / 2.0L + (q <= 0.0L ? s : -s);
    const long double u = std::cbrt(u0);
    long double y = 0.0L;
    if (u != 0.0L) y = u - p / (3.0L * u);
    roots.push_back(y - shift);
  }

  for (long double& x : roots) {
    for (int it = 0; it < 2; ++it) {
      const long double f = ((x + b) * x + c) * x + d;
      const long double fp = (3.0L * x + 2.0L * b) * x + c;
      if (fp != 0.0L) x -= f / fp;
    }
  }
  return roots;
}

}  // namespace detail

// Accessory-parameter problem: the unique pole z0 in the upper half-plane for
// given angle parameters and prevertex t.  Root selection follows the
// cleared-denominator predicate r2(x)^2 x^2 < r1(x) r2(x); roots whose pass
// margin is in the noise band are disambiguated by their residue defect.
template <class Real>
AccessorySolution<Real> solve_pole(const AngleParams<Real>& ang, Real t) {
  const CubicCoeffs<Real> cc = cubic_coeffs(ang, t);

  const long double a = static_cast<long double>(ang.alpha);
  const long double b = static_cast<long double>(ang.beta);
  const long double g = static_cast<long double>(ang.gamma);
  const long double tt = static_cast<long double>(t);
  const long double E = a + b + g - 1.0L;
  const long double A = static_cast<long double>(cc.A);

  const auto roots = detail::solve_cubic_monic(static_cast<long double>(cc.B) / A,
                                               static_cast<long double>(cc.C) / A,
                                               static_cast<long double>(cc.D) / A);

  auto r1 = [&](long double x) { return a * tt * x; };
  auto r2 = [&](long double x) { return (1.0L - E) * x + E * (tt + 1.0L) - g * tt - b; };

  long double scale = 0.0L;
  std::vector<long double> margins(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const long double lhs = r2(roots[i]) * r2(roots[i]) * roots[i] * roots[i];
    const long double rhs = r1(roots[i]) * r2(roots[i]);
    margins[i] = rhs - lhs;
    scale = std::max(scale, std::abs(lhs) + std::abs(rhs));
  }
  if (scale == 0.0L) throw no_root_error("solve_pole: degenerate cubic predicate");

  std::vector<std::size_t> passers;
  std::size_t solid = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (margins[i] > 0.0L) {
      passers.push_back(i);
      if (margins[i] > 1e-12L * scale) ++solid;
    }
  }
  if (passers.empty()) {
    throw no_root_error("solve_pole: no cubic root satisfies x^2 < rho(x)");
  }
  if (solid > 1) {
    throw ambiguous_root_error("solve_pole: several roots pass the selection predicate");
  }

  long double best_defect = std::numeric_limits<long double>::infinity();
  long double x0 = 0.0L, y0 = 0.0L;
  for (const std::size_t i : passers) {
    const long double den = r2(roots[i]);
    if (den == 0.0L) continue;
    const long double y2 = r1(roots[i]) / den - roots[i] * roots[i];
    if (!(y2 > 0.0L)) continue;
    const long double y = std::sqrt(y2);
    const Real defect = residue_defect(
        Complex<Real>(static_cast<Real>(roots[i]), static_cast<Real>(y)), ang, t);
    if (defect < best_defect) {
      best_defect = defect;
      x0 = roots[i];
      y0 = y;
    }
  }
  if (!(best_defect < std::numeric_limits<long double>::infinity())) {
    throw no_root_error("solve_pole: predicate passers have no admissible imaginary part");
  }
  if (!(best_defect <= 1e-10L)) {
    throw solver_failure("solve_pole: residue condition defect above 1e-10");
  }

  AccessorySolution<Real> sol;
  sol.t = t;
  sol.x0 = static_cast<Real>(x0);
  sol.y0 = static_cast<Real>(y0);
  sol.z0 = Complex<Real>(sol.x0, sol.y0);
  sol.residual = static_cast<Real>(best_defect);
  return sol;
}

}  // namespace quadmod
