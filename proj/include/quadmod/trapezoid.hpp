#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "quadmod/bisect.hpp"
#include "quadmod/duren_pfaltzgraff.hpp"
#include "quadmod/elliptic.hpp"
#include "quadmod/errors.hpp"
#include "quadmod/hypergeometric.hpp"
#include "quadmod/quadrature.hpp"
#include "quadmod/starlike.hpp"

namespace quadmod {

// Isosceles trapezoid of height 1 with acute angle pi*alpha, half top base c
// and half bottom base d = c + cot(pi*alpha); alpha = 1/2 gives the rectangle
// c = d.
template <class Real>
struct TrapezoidSpec {
  Real alpha;
  Real c;
  Real d;
};

template <class Real>
bool is_rectangle(const TrapezoidSpec<Real>& spec) {
  return spec.alpha == Real(0.5);
}

template <class Real>
void validate_trapezoid(const TrapezoidSpec<Real>& spec) {
  if (!(spec.alpha > Real(0)) || !(spec.alpha <= Real(0.5))) {
    throw invalid_input("trapezoid: require 0 < alpha <= 1/2");
  }
  if (!(spec.c > Real(0)) || !(spec.d >= spec.c)) {
    throw invalid_input("trapezoid: require 0 < c <= d");
  }
  constexpr Real pi = std::numbers::pi_v<Real>;
  const Real cot = is_rectangle(spec) ? Real(0)
                                      : std::cos(pi * spec.alpha) / std::sin(pi * spec.alpha);
  if (std::abs(spec.d - spec.c - cot) > Real(1e-12) * (Real(1) + std::abs(cot) + spec.d)) {
    throw invalid_input("trapezoid: d - c must equal cot(pi*alpha)");
  }
}

template <class Real>
TrapezoidSpec<Real> make_trapezoid(Real alpha, Real c) {
  constexpr Real pi = std::numbers::pi_v<Real>;
  TrapezoidSpec<Real> spec;
  spec.alpha = alpha;
  spec.c = c;
  spec.d = alpha == Real(0.5) ? c : c + std::cos(pi * alpha) / std::sin(pi * alpha);
  validate_trapezoid(spec);
  return spec;
}

// ---------------------------------------------------------------------------
// interior map: lower half-plane onto the trapezoid, prevertices +-1, +-1/lambda

namespace detail {

// integral over (0,1) of the interior side density (maps onto the half top base)
template <class Real>
Real interior_base_integral(Real alpha, Real lambda, const QuadratureSpec<Real>& qspec) {
  auto f = [&](Real t, Real /*da*/, Real db) {
    const Real omt2 = db * (Real(1) + t);                                  // 1 - t^2
    const Real omlt2 = ((Real(1) - lambda) + lambda * db) * (Real(1) + lambda * t);  // 1 - l^2 t^2
    return std::pow(omt2, -alpha) * std::pow(omlt2, alpha - 1);
  };
  return quad(f, Real(0), Real(1), qspec).value;
}

// integral over (1/lambda, inf), transformed to (0,1); maps onto the half
// bottom base
template <class Real>
Real interior_tail_total(Real alpha, Real lambda, const QuadratureSpec<Real>& qspec) {
  auto f = [&](Real s, Real /*da*/, Real db) {
    const Real oms2 = db * (Real(1) + s);
    const Real omls2 = ((Real(1) - lambda) + lambda * db) * (Real(1) + lambda * s);
    return std::pow(oms2, alpha - 1) * std::pow(omls2, -alpha);
  };
  return std::pow(lambda, 2 * alpha - 1) * quad(f, Real(0), Real(1), qspec).value;
}

template <class Real>
QuadratureSpec<Real> trap_qspec(int wp) {
  const Real tol = std::pow(Real(10), Real(-wp));
  return {tol, tol, 14};
}

}  // namespace detail

// lambda in (0,1) solving the base-length ratio equation by bisection on the
// quadrature route.
template <class Real>
Real interior_lambda(const TrapezoidSpec<Real>& spec, int wp = 12) {
  validate_trapezoid(spec);
  if (is_rectangle(spec)) {
    throw invalid_input("interior_lambda: degenerate at alpha = 1/2 (base ratio carries no "
                        "information); use interior_lambda_rectangle");
  }
  const auto qspec = detail::trap_qspec<Real>(wp);
  const Real target = spec.c / spec.d;
  auto f = [&](Real lam) {
    return detail::interior_base_integral(spec.alpha, lam, qspec) /
               detail::interior_tail_total(spec.alpha, lam, qspec) -
           target;
  };
  return bisect_expanding(f, Real(0.05), Real(0.95), Real(0), Real(1), Real(1e-15));
}

// Rectangle special case: lambda with 2 K(lambda)/K(lambda') = 2c.
template <class Real>
Real interior_lambda_rectangle(Real c) {
  if (!(c > Real(0))) throw invalid_input("interior_lambda_rectangle: require c > 0");
  return mu_inv(std::numbers::pi_v<Real> / (Real(2) * c));
}

template <class Real>
Real interior_modulus(const TrapezoidSpec<Real>& spec, int wp = 12) {
  const Real lam = is_rectangle(spec) ? interior_lambda_rectangle(spec.c)
                                      : interior_lambda(spec, wp);
  return Real(2) * ellip_K(lam) / ellip_K(comp_modulus(lam));
}

// Left side of the hypergeometric form of the interior equation; equals d/c
// at the solution.  Kept as a cross-check for the quadrature route.
template <class Real>
Real interior_equation_hyper(Real alpha, Real lambda) {
  const Real l2 = lambda * lambda;
  return beta(alpha, Real(0.5)) / beta(Real(1) - alpha, Real(0.5)) *
         std::pow(lambda, 2 * alpha - 1) *
         gauss_2F1(Real(0.5), alpha, alpha + Real(0.5), l2) /
         gauss_2F1(Real(0.5), Real(1) - alpha, Real(1.5) - alpha, l2);
}

// ---------------------------------------------------------------------------
// exterior map: upper half-plane onto the trapezoid exterior, pole at i,
// prevertices +-a, +-b with k = a/b

// a(k) from the vanishing of the residue at the pole.
template <class Real>
Real exterior_a_of_k(Real alpha, Real k) {
  if (!(k > Real(0)) || !(k < Real(1)) || !(alpha > Real(0)) || !(alpha <= Real(0.5))) {
    throw invalid_input("exterior_a_of_k: require 0 < k < 1 and 0 < alpha <= 1/2");
  }
  const Real A = (Real(0.5) - alpha) * (Real(1) - k * k);
  return std::sqrt(std::sqrt(A * A + k * k) - A);
}

namespace detail {

template <class Real>
Real exterior_base_integral(Real alpha, Real k, Real a, const QuadratureSpec<Real>& qspec) {
  auto f = [&](Real s, Real /*da*/, Real db) {
    const Real oms2 = db * (Real(1) + s);
    const Real omks2 = ((Real(1) - k) + k * db) * (Real(1) + k * s);
    const Real den = Real(1) + a * a * s * s;
    return std::pow(oms2, alpha) * std::pow(omks2, Real(1) - alpha) / (den * den);
  };
  return quad(f, Real(0), Real(1), qspec).value;
}

template <class Real>
Real exterior_tail_total(Real alpha, Real k, Real a, const QuadratureSpec<Real>& qspec) {
  auto f = [&](Real s, Real /*da*/, Real db) {
    const Real oms2 = db * (Real(1) + s);
    const Real omks2 = ((Real(1) - k) + k * db) * (Real(1) + k * s);
    const Real den = a * a + k * k * s * s;
    return std::pow(omks2, alpha) * std::pow(oms2, Real(1) - alpha) / (den * den);
  };
  return std::pow(k, Real(3) - 2 * alpha) * quad(f, Real(0), Real(1), qspec).value;
}

}  // namespace detail

// k in (0,1) solving the exterior base-length ratio equation.
template <class Real>
Real exterior_k(const TrapezoidSpec<Real>& spec, int wp = 12) {
  validate_trapezoid(spec);
  if (is_rectangle(spec)) {
    throw invalid_input("exterior_k: degenerate at alpha = 1/2 (base ratio carries no "
                        "information); use exterior_k_rectangle");
  }
  const auto qspec = detail::trap_qspec<Real>(wp);
  const Real target = spec.c / spec.d;
  auto f = [&](Real k) {
    const Real a = exterior_a_of_k(spec.alpha, k);
    return detail::exterior_base_integral(spec.alpha, k, a, qspec) /
               detail::exterior_tail_total(spec.alpha, k, a, qspec) -
           target;
  };
  return bisect_expanding(f, Real(0.05), Real(0.95), Real(0), Real(1), Real(1e-15));
}

// Rectangle special case through the Duren-Pfaltzgraff modulus:
// 2 K(k)/K(k') equals the exterior modulus of the corner quadruple.
template <class Real>
Real exterior_k_rectangle(Real c) {
  if (!(c > Real(0))) throw invalid_input("exterior_k_rectangle: require c > 0");
  return mu_inv(std::numbers::pi_v<Real> / dp_modulus_of_height(Real(1) / (Real(2) * c)));
}

template <class Real>
Real exterior_modulus_trapezoid(const TrapezoidSpec<Real>& spec, int wp = 12) {
  const Real k = is_rectangle(spec) ? exterior_k_rectangle(spec.c) : exterior_k(spec, wp);
  return Real(2) * ellip_K(k) / ellip_K(comp_modulus(k));
}

// Left side of the Appell form of the exterior equation; equals d/c at the
// solution.  Cross-check only.  (The tail integral carries w = -(k/a)^2 and
// the halves of the two tau-substitutions cancel.)
template <class Real>
Real exterior_equation_hyper(Real alpha, Real k) {
  const Real a = exterior_a_of_k(alpha, k);
  const Real a2 = a * a;
  const Real num = std::pow(k, Real(3) - 2 * alpha) * beta(Real(0.5), Real(2) - alpha) *
                   appell_F1(Real(0.5), -alpha, Real(2), Real(2.5) - alpha,
                             Complex<Real>(k * k), Complex<Real>(-k * k / a2))
                       .real();
  const Real den = a2 * a2 * beta(Real(0.5), Real(1) + alpha) *
                   appell_F1(Real(0.5), alpha - Real(1), Real(2), Real(1.5) + alpha,
                             Complex<Real>(k * k), Complex<Real>(-a2))
                       .real();
  return num / den;
}

// ---------------------------------------------------------------------------
// boundary correspondence

// Arc-length integral of the interior map from 0 to the prevertex x; the two
// admissible ranges are [0,1] (top base) and (1/lambda, inf) (bottom base).
template <class Real>
Real boundary_interior(Real x, Real alpha, Real lambda) {
  if (!(lambda > Real(0)) || !(lambda < Real(1))) {
    throw invalid_input("boundary_interior: require 0 < lambda < 1");
  }
  if (x == Real(0)) return Real(0);
  const Real l2 = lambda * lambda;
  if (x > Real(0) && x < Real(1)) {
    return x * appell_F1(Real(0.5), alpha, Real(1) - alpha, Real(1.5),
                         Complex<Real>(x * x), Complex<Real>(l2 * x * x))
                   .real();
  }
  if (x == Real(1)) {
    // F1 reduction at the singular corner z = 1
    return beta(Real(1) - alpha, Real(0.5)) *
           gauss_2F1(Real(0.5), Real(1) - alpha, Real(1.5) - alpha, l2) / Real(2);
  }
  if (x > Real(1) / lambda) {
    const Real xi = Real(1) / (x * x);
    return std::pow(lambda, 2 * (alpha - 1)) / x *
           appell_F1(Real(0.5), alpha, Real(1) - alpha, Real(1.5),
                     Complex<Real>(xi), Complex<Real>(xi / l2))
               .real();
  }
  throw invalid_input("boundary_interior: x must lie in [0,1] or beyond 1/lambda");
}

// Same for the exterior map; ranges (0,1) and (1/k, inf).
template <class Real>
Real boundary_exterior(Real x, Real alpha, Real k) {
  if (!(k > Real(0)) || !(k < Real(1))) {
    throw invalid_input("boundary_exterior: require 0 < k < 1");
  }
  const Real a = exterior_a_of_k(alpha, k);
  const Real a2 = a * a;
  if (x == Real(0)) return Real(0);
  if (x > Real(0) && x < Real(1)) {
    LauricellaArgs<Real> args;
    args.a = Real(0.5);
    args.b = {-alpha, alpha - Real(1), Real(2)};
    args.c = Real(1.5);
    args.z = {Complex<Real>(x * x), Complex<Real>(k * k * x * x), Complex<Real>(-a2 * x * x)};
    return x * lauricella_FD(args).real();
  }
  if (x > Real(1) / k) {
    const Real xi = Real(1) / (x * x);
    LauricellaArgs<Real> args;
    args.a = Real(0.5);
    args.b = {-alpha, alpha - Real(1), Real(2)};
    args.c = Real(1.5);
    args.z = {Complex<Real>(xi), Complex<Real>(xi / (k * k)), Complex<Real>(-xi / a2)};
    return std::pow(k, 2 * (Real(1) - alpha)) / (x * a2 * a2) * lauricella_FD(args).real();
  }
  throw invalid_input("boundary_exterior: x must lie in (0,1) or beyond 1/k");
}

// ---------------------------------------------------------------------------
// g, lambda0 and the lower-bound family

// g(lambda) = lambda K'(lambda) / K(lambda)
template <class Real>
Real g_function(Real lambda) {
  if (!(lambda > Real(0)) || !(lambda < Real(1))) {
    throw invalid_input("g_function: argument must lie in (0, 1)");
  }
  return Real(2) / std::numbers::pi_v<Real> * lambda * mu(lambda);
}

// Maximum point of g: the root of (lambda')^2 K K' = pi/2.
template <class Real>
Real lambda0() {
  static const Real value = bisect(
      [](Real lam) {
        const Real lp = comp_modulus(lam);
        return lp * lp * ellip_K(lam) * ellip_K(lp) - std::numbers::pi_v<Real> / 2;
      },
      Real(0.2), Real(0.99), Real(1e-12));
  return value;
}

// C(alpha) = (sqrt(1 + tan^2(pi alpha)/4) - tan(pi alpha)/2)^2, the reciprocal
// of the shear-map distortion; 0 at alpha = 1/2.
template <class Real>
Real C_alpha(Real alpha) {
  if (!(alpha > Real(0)) || !(alpha <= Real(0.5))) {
    throw invalid_input("C_alpha: require 0 < alpha <= 1/2");
  }
  if (alpha == Real(0.5)) return Real(0);
  const Real T = std::tan(std::numbers::pi_v<Real> * alpha);
  const Real root = std::sqrt(Real(1) + T * T / 4);
  return Real(1) / ((root + T / 2) * (root + T / 2));
}

// Rectangle bound of the shifted-quadruple family: 2 g(delta/d) d.
template <class Real>
Real rectangle_lower_bound(Real d, Real delta) {
  if (!(delta > Real(0)) || !(delta <= d)) {
    throw invalid_input("rectangle_lower_bound: require 0 < delta <= d");
  }
  const Real lam = delta / d;
  if (lam == Real(1)) return Real(0);  // g -> 0 as lambda -> 1
  return Real(2) * g_function(lam) * d;
}

// max of the interior/exterior modulus ratio and its reciprocal
template <class Real>
Real ml_natural_from(Real lambda, Real k) {
  const Real ratio = (ellip_K(lambda) / ellip_K(comp_modulus(lambda))) *
                     (ellip_K(comp_modulus(k)) / ellip_K(k));
  return std::max(ratio, Real(1) / ratio);
}

template <class Real>
Real ml_natural(const TrapezoidSpec<Real>& spec, int wp = 12) {
  validate_trapezoid(spec);
  const Real lam = is_rectangle(spec) ? interior_lambda_rectangle(spec.c)
                                      : interior_lambda(spec, wp);
  const Real k = is_rectangle(spec) ? exterior_k_rectangle(spec.c) : exterior_k(spec, wp);
  return ml_natural_from(lam, k);
}

template <class Real>
Real ml_shifted(const TrapezoidSpec<Real>& spec) {
  validate_trapezoid(spec);
  const Real l0 = lambda0<Real>();
  const Real lam = std::min(l0, spec.c / spec.d);
  return g_function(lam) * (Real(1) + C_alpha(spec.alpha)) * spec.d;
}

// Enhanced shifted-quadruple bound: invert the boundary correspondences at
// delta = min(lambda0, c/d) d and compare the two resulting moduli.
template <class Real>
Real ml_enhanced(const TrapezoidSpec<Real>& spec, int wp = 12) {
  validate_trapezoid(spec);
  const auto qspec = detail::trap_qspec<Real>(wp);
  const Real lam = is_rectangle(spec) ? interior_lambda_rectangle(spec.c)
                                      : interior_lambda(spec, wp);
  const Real k = is_rectangle(spec) ? exterior_k_rectangle(spec.c) : exterior_k(spec, wp);
  // shifted quadruple at height delta: the corner case c/d <= lambda0 puts
  // the marked points at the natural top vertices
  const bool at_corner = spec.c / spec.d <= lambda0<Real>();
  const Real delta = at_corner ? spec.c : lambda0<Real>() * spec.d;

  auto invert_increasing = [&](auto&& f, Real lo, Real hi, Real target, const char* what) {
    if (!((f(lo) - target) * (f(hi) - target) <= Real(0))) {
      throw inversion_error(std::string("ml_enhanced: no bracket inverting ") + what);
    }
    return bisect([&](Real x) { return f(x) - target; }, lo, hi, Real(1e-14));
  };

  // interior preimages of delta and delta - i
  const Real base_i = detail::interior_base_integral(spec.alpha, lam, qspec);
  const Real tail_i = detail::interior_tail_total(spec.alpha, lam, qspec);
  Real x_star = Real(1);
  if (!at_corner) {
    x_star = invert_increasing([&](Real x) { return boundary_interior(x, spec.alpha, lam); },
                               Real(1e-8), Real(1) - Real(1e-14), delta / spec.c * base_i,
                               "x* on the top base");
  }
  const Real tgt_xx = delta / spec.d * tail_i;
  Real hi_x = Real(2) / lam;
  for (int i = 0; i < 200 && boundary_interior(hi_x, spec.alpha, lam) > tgt_xx; ++i) hi_x *= 2;
  const Real x_sstar = invert_increasing(
      [&](Real x) { return -boundary_interior(x, spec.alpha, lam); },
      (Real(1) + Real(1e-12)) / lam, hi_x, -tgt_xx, "x** on the bottom base");

  // exterior preimages
  const Real a = exterior_a_of_k(spec.alpha, k);
  const Real base_e = detail::exterior_base_integral(spec.alpha, k, a, qspec);
  const Real tail_e = detail::exterior_tail_total(spec.alpha, k, a, qspec);
  Real y_star = Real(1);
  if (!at_corner) {
    y_star = invert_increasing([&](Real y) { return boundary_exterior(y, spec.alpha, k); },
                               Real(1e-8), Real(1) - Real(1e-14), delta / spec.c * base_e,
                               "y* on the top base");
  }
  const Real tgt_yy = delta / spec.d * tail_e;
  Real hi_y = Real(2) / k;
  for (int i = 0; i < 200 && boundary_exterior(hi_y, spec.alpha, k) > tgt_yy; ++i) hi_y *= 2;
  const Real y_sstar = invert_increasing(
      [&](Real y) { return -boundary_exterior(y, spec.alpha, k); },
      (Real(1) + Real(1e-12)) / k, hi_y, -tgt_yy, "y** on the bottom base");

  const Real lam_t = x_star / x_sstar;
  const Real k_t = y_star / y_sstar;
  return (ellip_K(lam_t) / ellip_K(comp_modulus(lam_t))) *
         (ellip_K(comp_modulus(k_t)) / ellip_K(k_t));
}

// Lower bound for the reflection coefficient; the alpha = 1/2 rectangle also
// admits the sharper 2 g(lambda0) d route.
template <class Real>
Real qr_lower(const TrapezoidSpec<Real>& spec, int wp = 12) {
  Real best = std::max(ml_shifted(spec), ml_natural(spec, wp));
  if (is_rectangle(spec)) {
    best = std::max(best, rectangle_lower_bound(spec.d, lambda0<Real>() * spec.d));
  }
  return best;
}

template <class Real>
struct BoundsReport {
  Real lambda;
  Real k;
  Real mod_interior;
  Real mod_exterior;
  Real ml_natural;
  Real ml_shifted;
  Real ml_enhanced;
  Real qr_lower;
  Real qr_upper;
};

template <class Real>
BoundsReport<Real> bounds_report(const TrapezoidSpec<Real>& spec, int wp = 12) {
  validate_trapezoid(spec);
  BoundsReport<Real> rep;
  rep.lambda = is_rectangle(spec) ? interior_lambda_rectangle(spec.c)
                                  : interior_lambda(spec, wp);
  rep.k = is_rectangle(spec) ? exterior_k_rectangle(spec.c) : exterior_k(spec, wp);
  rep.mod_interior = Real(2) * ellip_K(rep.lambda) / ellip_K(comp_modulus(rep.lambda));
  rep.mod_exterior = Real(2) * ellip_K(rep.k) / ellip_K(comp_modulus(rep.k));
  rep.ml_natural = ml_natural_from(rep.lambda, rep.k);
  rep.ml_shifted = ml_shifted(spec);
  rep.ml_enhanced = ml_enhanced(spec, wp);
  rep.qr_lower = std::max(rep.ml_shifted, rep.ml_natural);
  if (is_rectangle(spec)) {
    rep.qr_lower = std::max(rep.qr_lower, rectangle_lower_bound(spec.d, lambda0<Real>() * spec.d));
  }
  rep.qr_upper = quadmod::qr_upper(spec.c, spec.d).qr_upper;
  return rep;
}

}  // namespace quadmod
