#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <type_traits>
#include <utility>

#include "quadmod/errors.hpp"

namespace quadmod {

template <class Real>
struct QuadratureSpec {
  Real abs_tol = Real(1e-12);
  Real rel_tol = Real(1e-12);
  int max_levels = 12;
};

template <class T, class Real>
struct QuadResult {
  T value{};
  Real error = Real(0);     // estimated absolute error
  int levels = 0;           // refinement levels actually used
  std::size_t evaluations = 0;

  operator T() const { return value; }
};

namespace detail {

template <class T>
constexpr bool is_finite_value(const T& v) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::isfinite(v);
  } else {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  }
}

// Integrands may take (x) or (x, dist_a, dist_b); the distances to the
// endpoints are exact where x itself has rounded, which is what integrands
// with endpoint singularities must be written against.
template <class F, class Real>
auto call_integrand(F& f, Real x, Real da, Real db) {
  if constexpr (std::is_invocable_v<F&, Real, Real, Real>) {
    return f(x, da, db);
  } else {
    return f(x);
  }
}

template <class F, class Real>
using integrand_result_t =
    std::decay_t<decltype(call_integrand(std::declval<F&>(), std::declval<Real>(),
                                         std::declval<Real>(), std::declval<Real>()))>;

}  // namespace detail

// Tanh-sinh (double-exponential) quadrature on a finite interval.  Endpoint
// singularities x^p with p > -1 are admissible; abscissae are generated as
// offsets from the endpoints so that f sees accurate small distances.
template <class Real, class F>
auto quad(F&& f, Real a, Real b, const QuadratureSpec<Real>& spec = {})
    -> QuadResult<detail::integrand_result_t<F, Real>, Real> {
  using T = detail::integrand_result_t<F, Real>;
  using std::abs;

  if (!(spec.abs_tol > Real(0)) || !(spec.rel_tol > Real(0)) || spec.max_levels < 1) {
    throw invalid_input("quad: tolerances must be positive and max_levels >= 1");
  }
  if (!(a < b)) {
    if (a == b) return {T{}, Real(0), 0, 0};
    throw invalid_input("quad: require a <= b");
  }

  constexpr Real half_pi = std::numbers::pi_v<Real> / 2;
  const Real half = (b - a) / 2;
  const Real u_max = Real(5);  // weights decay like exp(-pi*exp(u)) out here

  QuadResult<T, Real> out;

  // f evaluated at the node u, expressed through its distance to the nearer
  // endpoint; contributes weight * f.  Returns false once the tail is dead.
  auto accumulate = [&](Real u, T& sum, Real& tail_mag) -> bool {
    const Real s = half_pi * std::sinh(u);
    const Real ch = std::cosh(s);
    const Real w = half_pi * std::cosh(u) / (ch * ch);
    if (!(w > std::numeric_limits<Real>::min())) return false;
    // 1 - tanh(|s|) = 2 / (exp(2|s|) + 1)
    const Real d = half * Real(2) / (std::exp(Real(2) * abs(s)) + Real(1));
    if (d <= Real(0)) return false;
    const Real x = u >= Real(0) ? b - d : a + d;
    const Real da = u >= Real(0) ? (b - a) - d : d;
    const Real db = u >= Real(0) ? d : (b - a) - d;
    T fv = detail::call_integrand(f, x, da, db);
    ++out.evaluations;
    if (!detail::is_finite_value(fv)) {
      // only forgivable hard against an endpoint, where the weight has
      // already collapsed and the true contribution is negligible
      if (d < std::numeric_limits<Real>::epsilon() * (b - a)) {
        fv = T{};
      } else {
        throw convergence_error("quad: integrand not finite inside (a, b)");
      }
    }
    sum += w * fv;
    tail_mag = abs(w * fv);
    return true;
  };

  Real h = Real(1);
  T total{};
  {
    Real tail = Real(0);
    accumulate(Real(0), total, tail);
    for (int dir = -1; dir <= 1; dir += 2) {
      int dead = 0;
      for (Real u = h * dir;; u += h * dir) {
        Real mag = Real(0);
        if (!accumulate(u, total, mag) || abs(u) > u_max) break;
        if (mag <= spec.abs_tol * Real(1e-3) + abs(total) * std::numeric_limits<Real>::epsilon()) {
          if (++dead >= 2) break;
        } else {
          dead = 0;
        }
      }
    }
  }
  T integral = total * h * half;
  out.error = std::numeric_limits<Real>::infinity();

  for (int level = 1; level <= spec.max_levels; ++level) {
    h /= 2;
    T mid_sum{};
    for (int dir = -1; dir <= 1; dir += 2) {
      int dead = 0;
      for (Real u = h * dir;; u += Real(2) * h * dir) {
        Real mag = Real(0);
        if (!accumulate(u, mid_sum, mag) || abs(u) > u_max) break;
        if (mag <= spec.abs_tol * Real(1e-3) + abs(mid_sum) * std::numeric_limits<Real>::epsilon()) {
          if (++dead >= 2) break;
        } else {
          dead = 0;
        }
      }
    }
    total += mid_sum;
    const T refined = total * h * half;
    out.error = abs(refined - integral);
    integral = refined;
    out.levels = level;
    if (level >= 2 && out.error <= std::max(spec.abs_tol, spec.rel_tol * abs(integral))) {
      out.value = integral;
      return out;
    }
  }
  throw convergence_error("quad: tolerance not reached within max_levels refinements");
}

}  // namespace quadmod
