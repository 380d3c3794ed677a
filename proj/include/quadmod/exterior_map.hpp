#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <utility>
#include <vector>

#include "quadmod/accessory.hpp"
#include "quadmod/elliptic.hpp"
#include "quadmod/errors.hpp"
#include "quadmod/hypergeometric.hpp"
#include "quadmod/quadrature.hpp"

namespace quadmod {

// Normalized quadrilateral: vertices A1 = 1, A2 = 0, A3, A4 in positive order
// around the exterior domain.
template <class Real>
struct QuadSpec {
  Complex<Real> a3;
  Complex<Real> a4;
};

template <class Real>
struct SolverOptions {
  Real n = Real(2);    // bisection bracket is [1, 10^n]
  int wp = 12;         // quadrature tolerance 10^-wp
  int max_iter = 1000;

  QuadratureSpec<Real> quad_spec() const {
    if (!(n > Real(0)) || wp < 8) {
      throw invalid_input("SolverOptions: require n > 0 and wp >= 8");
    }
    const Real tol = std::pow(Real(10), Real(-wp));
    return {tol, tol, 14};
  }
};

template <class Real>
struct ModulusReport {
  Real M;
  AngleParams<Real> angles;
  Real t;
  Complex<Real> z0;
  Real l1, l2, l3, l4;
  Real r;  // 1/sqrt(t)
  int iterations;
  Real residual;        // residue-condition defect at the solution
  Real closure_defect;  // |A4 via l3 route - A4 via l4 route|
  Real quad_error;      // side-integral error estimate at the final t
};

// Angle parameters from the vertex pair, principal-value arguments.
template <class Real>
AngleParams<Real> angles_from_vertices(const QuadSpec<Real>& q) {
  const Complex<Real> a1(1), a2(0);
  AngleParams<Real> ang;
  ang.alpha = std::arg(q.a4 - a1) / std::numbers::pi_v<Real>;
  ang.beta = Real(1) - std::arg(q.a3 - a2) / std::numbers::pi_v<Real>;
  ang.gamma = Real(1) - ang.beta - std::arg(q.a4 - q.a3) / std::numbers::pi_v<Real>;
  ang.delta = Real(2) - ang.alpha - ang.beta - ang.gamma;
  validate_angles(ang);  // rejects non-convex and degenerate vertex data
  return ang;
}

template <class Real>
struct SideIntegrals {
  Real j1;
  Real j2;
  Real error;  // combined quadrature error estimate
};

// J1 over (0,1) and J2 over (1,t) with the |1 - x/z0|^4 denominator.
template <class Real>
SideIntegrals<Real> side_integrals(const AngleParams<Real>& ang, Real t, Complex<Real> z0,
                                   const QuadratureSpec<Real>& qspec = {}) {
  if (!(t > Real(1))) throw invalid_input("side_integrals: require t > 1");
  const Real a = ang.alpha, b = ang.beta, g = ang.gamma;
  auto denom4 = [&](Real x) {
    const Real n2 = std::norm(Complex<Real>(1) - x / z0);
    return n2 * n2;
  };
  auto f1 = [&](Real x, Real da, Real db) {
    return std::pow(da, a) * std::pow(db, b) * std::pow((t - Real(1) + db) / t, g) / denom4(x);
  };
  auto f2 = [&](Real x, Real da, Real db) {
    return std::pow(x, a) * std::pow(da, b) * std::pow(db / t, g) / denom4(x);
  };
  const auto q1 = quad(f1, Real(0), Real(1), qspec);
  const auto q2 = quad(f2, Real(1), t, qspec);
  return {q1.value, q2.value, q1.error + q2.error};
}

template <class Real>
struct SolveTResult {
  Real t;
  AccessorySolution<Real> pole;
  int iterations;
  Real quad_error;
};

// Bisection for the prevertex t on [1, 10^n]: l2(t) = J2/J1 is strictly
// increasing, and the iteration count follows floor(5 (n + 15)), capped once
// the bracket is at 64-bit resolution.
template <class Real>
SolveTResult<Real> solve_t(const AngleParams<Real>& ang, Real L, const SolverOptions<Real>& opts) {
  if (!(L > Real(0))) throw invalid_input("solve_t: target side length must be positive");
  const QuadratureSpec<Real> qspec = opts.quad_spec();
  const Real t_hi = std::pow(Real(10), opts.n);

  auto l2_at = [&](Real t) {
    const auto pole = solve_pole(ang, t);
    const auto si = side_integrals(ang, t, pole.z0, qspec);
    return si.j2 / si.j1;
  };
  if (l2_at(t_hi) < L) {
    throw bracket_error("solve_t: l2(10^n) below target; increase the bracket exponent n");
  }

  const int schedule = static_cast<int>(Real(5) * (opts.n + Real(15)));
  const int iters = std::min(schedule, opts.max_iter);
  Real t1 = Real(1), t2 = t_hi;
  int used = 0;
  for (int i = 0; i < iters && t2 - t1 > Real(1e-13) * (Real(1) + t2); ++i, ++used) {
    const Real tm = t1 + (t2 - t1) / 2;
    if (l2_at(tm) < L) {
      t1 = tm;
    } else {
      t2 = tm;
    }
  }

  SolveTResult<Real> res;
  res.t = t1 + (t2 - t1) / 2;
  res.pole = solve_pole(ang, res.t);
  res.iterations = used;
  res.quad_error = side_integrals(ang, res.t, res.pole.z0, qspec).error;
  return res;
}

// Side lengths l3, l4 from l2 and the angles.
template <class Real>
std::pair<Real, Real> side_lengths(const AngleParams<Real>& ang, Real l2) {
  if (!(l2 > Real(0))) throw invalid_input("side_lengths: require l2 > 0");
  constexpr Real pi = std::numbers::pi_v<Real>;
  const Real sd = std::sin(pi * ang.delta);
  const Real l3 = (std::sin(pi * ang.alpha) + l2 * std::sin(pi * (ang.alpha + ang.beta))) / sd;
  const Real l4 = (std::sin(pi * (ang.beta + ang.gamma)) + l2 * std::sin(pi * ang.gamma)) / sd;
  return {l3, l4};
}

// Vertices from the angles and l2; the two expressions for A4 must agree.
template <class Real>
std::pair<Complex<Real>, Complex<Real>> vertices_from(const AngleParams<Real>& ang, Real l2) {
  constexpr Real pi = std::numbers::pi_v<Real>;
  const auto [l3, l4] = side_lengths(ang, l2);
  const Complex<Real> a3 = -l2 * std::exp(Complex<Real>(0, -pi * ang.beta));
  const Complex<Real> a4_fwd = a3 - l3 * std::exp(Complex<Real>(0, -pi * (ang.beta + ang.gamma)));
  const Complex<Real> a4_back = Complex<Real>(1) + l4 * std::exp(Complex<Real>(0, pi * ang.alpha));
  if (std::abs(a4_fwd - a4_back) > Real(1e-8) * (Real(1) + std::abs(a4_fwd))) {
    throw closure_error("vertices_from: the two expressions for A4 disagree");
  }
  return {a3, (a4_fwd + a4_back) / Real(2)};
}

// Exterior conformal modulus of the quadrilateral.  The bracket exponent
// escalates by +1 (up to 6) when the target side length falls outside the
// initial bracket.
template <class Real>
ModulusReport<Real> exterior_modulus(const QuadSpec<Real>& q, SolverOptions<Real> opts = {}) {
  const AngleParams<Real> ang = angles_from_vertices(q);
  const Real L = std::abs(q.a3);

  SolveTResult<Real> st;
  for (;;) {
    try {
      st = solve_t(ang, L, opts);
      break;
    } catch (const bracket_error&) {
      if (opts.n >= Real(6)) throw;
      opts.n += Real(1);
    }
  }

  ModulusReport<Real> rep;
  rep.angles = ang;
  rep.t = st.t;
  rep.z0 = st.pole.z0;
  rep.residual = st.pole.residual;
  rep.iterations = st.iterations;
  rep.quad_error = st.quad_error;
  rep.r = Real(1) / std::sqrt(st.t);
  const Real rprime = std::sqrt((st.t - Real(1)) / st.t);
  rep.M = ellip_K(rprime) / ellip_K(rep.r);

  const auto si = side_integrals(ang, st.t, st.pole.z0, opts.quad_spec());
  rep.l1 = Real(1);
  rep.l2 = si.j2 / si.j1;
  const auto [l3, l4] = side_lengths(ang, rep.l2);
  rep.l3 = l3;
  rep.l4 = l4;
  const auto [a3, a4] = vertices_from(ang, rep.l2);
  (void)a3;
  const Complex<Real> a4_back = Complex<Real>(1) + l4 * std::exp(Complex<Real>(0, std::numbers::pi_v<Real> * ang.alpha));
  rep.closure_defect = std::abs(a4 - a4_back);
  return rep;
}

// Conjugate quadrilateral: rotate the quadruple by one position and
// renormalize so the leading pair sits at 1 and 0 again.  Its exterior
// modulus is the reciprocal of the original.
template <class Real>
QuadSpec<Real> conjugate_quad(const QuadSpec<Real>& q) {
  const Complex<Real> s = -q.a3;
  return {(q.a4 - q.a3) / s, (Complex<Real>(1) - q.a3) / s};
}

// h(1) through the Lauricella form; equals J1 (the value is real).
template <class Real>
Complex<Real> h1_value(const AngleParams<Real>& ang, Real t, Complex<Real> z0,
                       const QuadratureSpec<Real>& qspec = {Real(1e-13), Real(1e-13), 14}) {
  LauricellaArgs<Real> args;
  args.a = Real(1) + ang.alpha;
  args.b = {-ang.gamma, Real(2), Real(2)};
  args.c = Real(2) + ang.alpha + ang.beta;
  args.z = {Complex<Real>(Real(1) / t), Complex<Real>(1) / z0, Complex<Real>(1) / std::conj(z0)};
  return beta(Real(1) + ang.alpha, Real(1) + ang.beta) * lauricella_FD(args, qspec);
}

// I = integral over (1, t) through the Lauricella form; equals J2.
template <class Real>
Complex<Real> I_value(const AngleParams<Real>& ang, Real t, Complex<Real> z0,
                      const QuadratureSpec<Real>& qspec = {Real(1e-13), Real(1e-13), 14}) {
  const Real tm1 = t - Real(1);
  LauricellaArgs<Real> args;
  args.a = Real(1) + ang.beta;
  args.b = {-ang.alpha, Real(2), Real(2)};
  args.c = Real(2) + ang.beta + ang.gamma;
  args.z = {Complex<Real>(-tm1), tm1 / (z0 - Complex<Real>(1)), tm1 / (std::conj(z0) - Complex<Real>(1))};
  const Real pre = std::pow(tm1, Real(1) + ang.beta + ang.gamma) * std::norm(z0) * std::norm(z0) /
                   (std::pow(t, ang.gamma) * std::norm(z0 - Complex<Real>(1)) * std::norm(z0 - Complex<Real>(1)));
  return pre * beta(Real(1) + ang.beta, Real(1) + ang.gamma) * lauricella_FD(args, qspec);
}

namespace detail {

// Principal-type powers with the branch fixed by continuity from one side of
// the real axis; the mapping integrand lives on the closed upper half-plane
// and must stay positive on (0, 1).
template <class Real>
Complex<Real> pow_upper(Complex<Real> w, Real p) {
  Real th = std::arg(w);
  if (th < -std::numbers::pi_v<Real> / 2) th += 2 * std::numbers::pi_v<Real>;
  return std::pow(std::abs(w), p) * std::exp(Complex<Real>(0, p * th));
}

template <class Real>
Complex<Real> pow_lower(Complex<Real> w, Real p) {
  Real th = std::arg(w);
  if (th > std::numbers::pi_v<Real> / 2) th -= 2 * std::numbers::pi_v<Real>;
  return std::pow(std::abs(w), p) * std::exp(Complex<Real>(0, p * th));
}

template <class Real>
Complex<Real> sc_integrand(Complex<Real> x, const AngleParams<Real>& ang, Real t,
                           Complex<Real> z0) {
  const Complex<Real> one(1);
  const Complex<Real> d1 = one - x / z0;
  const Complex<Real> d2 = one - x / std::conj(z0);
  return pow_upper(x, ang.alpha) * pow_lower(one - x, ang.beta) *
         pow_lower(one - x / t, ang.gamma) / (d1 * d1 * d2 * d2);
}

// Integrand factors evaluated against whichever segment endpoint is nearer,
// so that prevertices sitting exactly at an endpoint stay resolvable.
template <class Real>
Complex<Real> integrate_segment(Complex<Real> p, Complex<Real> q, const AngleParams<Real>& ang,
                                Real t, Complex<Real> z0, const QuadratureSpec<Real>& qspec) {
  const Complex<Real> dv = q - p;
  const Complex<Real> one(1);
  auto f = [&](Real /*s*/, Real da, Real db) {
    const bool near_p = da <= db;
    const Complex<Real> x = near_p ? p + da * dv : q - db * dv;
    const Complex<Real> f1mx = near_p ? (one - p) - da * dv : (one - q) + db * dv;
    const Complex<Real> f1mxt = near_p ? (one - p / t) - da * dv / t : (one - q / t) + db * dv / t;
    const Complex<Real> d1 = one - x / z0;
    const Complex<Real> d2 = one - x / std::conj(z0);
    return pow_upper(x, ang.alpha) * pow_lower(f1mx, ang.beta) *
           pow_lower(f1mxt, ang.gamma) / (d1 * d1 * d2 * d2) * dv;
  };
  return quad(f, Real(0), Real(1), qspec).value;
}

template <class Real>
Complex<Real> integrate_arc(Complex<Real> center, Real radius, Real phi1, Real phi2,
                            const AngleParams<Real>& ang, Real t, Complex<Real> z0,
                            const QuadratureSpec<Real>& qspec) {
  auto f = [&](Real s) {
    const Real phi = phi1 + s * (phi2 - phi1);
    const Complex<Real> e = std::exp(Complex<Real>(0, phi));
    const Complex<Real> x = center + radius * e;
    return sc_integrand(x, ang, t, z0) * Complex<Real>(0, 1) * radius * e * (phi2 - phi1);
  };
  return quad(f, Real(0), Real(1), qspec).value;
}

// One path piece [p, q], detouring around the pole z0 on the arc whose
// midpoint sits higher in the half-plane (the residue at z0 vanishes, so
// either arc yields the same value).
template <class Real>
Complex<Real> integrate_piece(Complex<Real> p, Complex<Real> q, Real radius,
                              const AngleParams<Real>& ang, Real t, Complex<Real> z0,
                              const QuadratureSpec<Real>& qspec) {
  const Real seg_len = std::abs(q - p);
  if (seg_len == Real(0)) return Complex<Real>(0);

  const Complex<Real> dir = (q - p) / seg_len;
  const Real proj = std::clamp(((z0 - p) * std::conj(dir)).real(), Real(0), seg_len);
  const Real dist = std::abs(z0 - (p + proj * dir));
  if (dist >= radius) {
    return integrate_segment(p, q, ang, t, z0, qspec);
  }

  // segment/circle intersection parameters
  const Real half_chord = std::sqrt(std::max(radius * radius - dist * dist, Real(0)));
  const Real s1 = std::clamp(proj - half_chord, Real(0), seg_len);
  const Real s2 = std::clamp(proj + half_chord, Real(0), seg_len);
  const Complex<Real> p1 = p + s1 * dir;
  const Complex<Real> p2 = p + s2 * dir;

  const Real phi1 = std::arg(p1 - z0);
  Real phi2_ccw = std::arg(p2 - z0);
  if (phi2_ccw < phi1) phi2_ccw += 2 * std::numbers::pi_v<Real>;
  Real phi2_cw = std::arg(p2 - z0);
  if (phi2_cw > phi1) phi2_cw -= 2 * std::numbers::pi_v<Real>;
  const Real mid_ccw = std::sin((phi1 + phi2_ccw) / 2);
  const Real mid_cw = std::sin((phi1 + phi2_cw) / 2);
  const Real phi2 = mid_ccw >= mid_cw ? phi2_ccw : phi2_cw;

  Complex<Real> h = integrate_segment(p, p1, ang, t, z0, qspec);
  h += integrate_arc(z0, std::abs(p1 - z0), phi1, phi2, ang, t, z0, qspec);
  h += integrate_segment(p2, q, ang, t, z0, qspec);
  return h;
}

// h(z) along [0, z].  A path along the real axis is split at the prevertices
// 1 and t, where the integrand has interior branch points.
template <class Real>
Complex<Real> h_of_z(Complex<Real> z, const AngleParams<Real>& ang, Real t, Complex<Real> z0,
                     const QuadratureSpec<Real>& qspec) {
  if (z == Complex<Real>(0)) return Complex<Real>(0);
  const Real radius = std::min(Real(0.1), std::abs(z - z0) / 2);

  std::vector<Complex<Real>> nodes;
  nodes.emplace_back(0);
  if (z.imag() == Real(0) && z.real() > Real(0)) {
    if (z.real() > Real(1)) nodes.emplace_back(1);
    if (z.real() > t) nodes.emplace_back(t);
  }
  nodes.push_back(z);

  Complex<Real> h(0);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    h += integrate_piece(nodes[i], nodes[i + 1], radius, ang, t, z0, qspec);
  }
  return h;
}

}  // namespace detail

// Image of z under the exterior map f(z) = 1 - h(z)/h(1).
template <class Real>
Complex<Real> map_point(Complex<Real> z, const AngleParams<Real>& ang, Real t, Complex<Real> z0,
                        const QuadratureSpec<Real>& qspec = {}) {
  if (!(z.imag() >= Real(0))) throw invalid_input("map_point: require Im z >= 0");
  if (z == z0) throw pole_error("map_point: z coincides with the pole z0");
  const auto si = side_integrals(ang, t, z0, qspec);
  return Complex<Real>(1) - detail::h_of_z(z, ang, t, z0, qspec) / si.j1;
}

template <class Real>
struct GridSpec {
  Real re0, re1, im0, im1;
  int n_re, n_im;
};

template <class Real>
struct GridSample {
  Complex<Real> z;
  Complex<Real> w;
  bool skipped;
};

// Images of a rectangular mesh in the upper half-plane; points within 1e-3 of
// z0 are recorded but not evaluated.
template <class Real>
std::vector<GridSample<Real>> grid_image(const AngleParams<Real>& ang, Real t, Complex<Real> z0,
                                         const GridSpec<Real>& grid,
                                         const QuadratureSpec<Real>& qspec = {}) {
  if (grid.n_re < 1 || grid.n_im < 1) throw invalid_input("grid_image: mesh counts must be >= 1");
  const Real h1 = side_integrals(ang, t, z0, qspec).j1;
  std::vector<GridSample<Real>> out;
  out.reserve(static_cast<std::size_t>(grid.n_re) * grid.n_im);
  for (int j = 0; j < grid.n_im; ++j) {
    const Real im = grid.n_im == 1 ? grid.im0
                                   : grid.im0 + (grid.im1 - grid.im0) * Real(j) / Real(grid.n_im - 1);
    for (int i = 0; i < grid.n_re; ++i) {
      const Real re = grid.n_re == 1
                          ? grid.re0
                          : grid.re0 + (grid.re1 - grid.re0) * Real(i) / Real(grid.n_re - 1);
      const Complex<Real> z(re, im);
      if (std::abs(z - z0) < Real(1e-3)) {
        out.push_back({z, Complex<Real>(0), true});
        continue;
      }
      const Complex<Real> w = Complex<Real>(1) - detail::h_of_z(z, ang, t, z0, qspec) / h1;
      out.push_back({z, w, false});
    }
  }
  return out;
}

template <class Real>
void write_grid_csv(std::ostream& os, const std::vector<GridSample<Real>>& samples) {
  const auto old_precision = os.precision(std::numeric_limits<Real>::max_digits10);
  os << "re_z,im_z,re_w,im_w,skipped\n";
  for (const auto& s : samples) {
    os << s.z.real() << ',' << s.z.imag() << ',' << s.w.real() << ',' << s.w.imag() << ','
       << (s.skipped ? 1 : 0) << '\n';
  }
  os.precision(old_precision);
}

}  // namespace quadmod
