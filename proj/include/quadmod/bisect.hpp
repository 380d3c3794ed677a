#pragma once

#include <cmath>
#include <utility>

#include "quadmod/errors.hpp"

namespace quadmod {

// Bisection for f(x) = 0 on [lo, hi].  The bracket must straddle a sign
// change; the midpoint of the final bracket is returned.
template <class Real, class F>
Real bisect(F&& f, Real lo, Real hi, Real xtol, int max_iter = 200) {
  Real flo = f(lo);
  Real fhi = f(hi);
  if (flo == Real(0)) return lo;
  if (fhi == Real(0)) return hi;
  if ((flo > Real(0)) == (fhi > Real(0))) {
    throw bracket_error("bisect: endpoints do not bracket a sign change");
  }
  for (int i = 0; i < max_iter && hi - lo > xtol; ++i) {
    const Real m = lo + (hi - lo) / 2;
    if (m <= lo || m >= hi) break;  // bracket at floating-point resolution
    const Real fm = f(m);
    if (fm == Real(0)) return m;
    if ((fm > Real(0)) == (flo > Real(0))) {
      lo = m;
      flo = fm;
    } else {
      hi = m;
    }
  }
  return lo + (hi - lo) / 2;
}

// Grows [lo, hi] towards (inner_lo, inner_hi) until f changes sign, then
// bisects.  Used by solvers whose equation is monotone on an open interval
// with singular behaviour at the ends.
template <class Real, class F>
Real bisect_expanding(F&& f, Real lo, Real hi, Real inner_lo, Real inner_hi,
                      Real xtol, int max_expand = 60) {
  Real flo = f(lo);
  Real fhi = f(hi);
  for (int i = 0; i < max_expand && (flo > Real(0)) == (fhi > Real(0)); ++i) {
    lo = inner_lo + (lo - inner_lo) / 2;
    hi = inner_hi - (inner_hi - hi) / 2;
    flo = f(lo);
    fhi = f(hi);
  }
  if ((flo > Real(0)) == (fhi > Real(0))) {
    throw bracket_error("bisect_expanding: no sign change found");
  }
  return bisect(std::forward<F>(f), lo, hi, xtol);
}

}  // namespace quadmod
