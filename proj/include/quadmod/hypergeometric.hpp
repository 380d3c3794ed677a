#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "quadmod/errors.hpp"
#include "quadmod/quadrature.hpp"

namespace quadmod {

template <class Real>
using Complex = std::complex<Real>;

// Euler beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
template <class Real>
Real beta(Real a, Real b) {
  if (!(a > Real(0)) || !(b > Real(0))) {
    throw invalid_input("beta: arguments must be positive");
  }
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

namespace detail {

template <class Real>
bool is_nonpositive_integer(Real x) {
  return x <= Real(0) && std::abs(x - std::round(x)) <
                             Real(16) * std::numeric_limits<Real>::epsilon() * (Real(1) + std::abs(x));
}

// Power series of 2F1 on |z| < 1; terminates when the term drops below
// ~0.05 eps of the partial sum.
template <class Real>
Real gauss_2F1_series(Real a, Real b, Real c, Real z) {
  Real term = Real(1);
  Real sum = Real(1);
  const Real cutoff = Real(0.05) * std::numeric_limits<Real>::epsilon();
  for (std::size_t n = 0; n < 1000000; ++n) {
    const Real rn(static_cast<Real>(n));
    term *= (a + rn) * (b + rn) / ((c + rn) * (rn + Real(1))) * z;
    sum += term;
    if (std::abs(term) < cutoff * std::abs(sum)) return sum;
  }
  throw convergence_error("gauss_2F1: series did not converge within 1e6 terms");
}

// Euler integral route, valid for c > a > 0 and z < 1.
template <class Real>
Real gauss_2F1_euler(Real a, Real b, Real c, Real z,
                     const QuadratureSpec<Real>& qspec = {Real(1e-14), Real(1e-14), 14}) {
  if (!(c > a) || !(a > Real(0))) {
    throw invalid_input("gauss_2F1: Euler integral needs c > a > 0");
  }
  auto integrand = [&](Real /*t*/, Real da, Real db) {
    const Real omtz = (Real(1) - z) + z * db;  // 1 - t z, exact against z -> 1
    return std::pow(da, a - 1) * std::pow(db, c - a - 1) * std::pow(omtz, -b);
  };
  return quad(integrand, Real(0), Real(1), qspec).value / beta(a, c - a);
}

}  // namespace detail

// Gaussian hypergeometric function, real arguments, z < 1.
template <class Real>
Real gauss_2F1(Real a, Real b, Real c, Real z) {
  if (detail::is_nonpositive_integer(c)) {
    throw invalid_input("gauss_2F1: c must not be a non-positive integer");
  }
  if (!(z < Real(1))) throw invalid_input("gauss_2F1: require z < 1");
  if (z == Real(0)) return Real(1);
  if (std::abs(z) <= Real(0.9)) return detail::gauss_2F1_series(a, b, c, z);
  if (c > a && a > Real(0)) return detail::gauss_2F1_euler(a, b, c, z);
  if (c > b && b > Real(0)) return detail::gauss_2F1_euler(b, a, c, z);
  if (std::abs(z) < Real(1)) return detail::gauss_2F1_series(a, b, c, z);
  throw invalid_input("gauss_2F1: no applicable evaluation route for these arguments");
}

// Appell F1 via the one-dimensional Picard integral (c > a > 0).
template <class Real>
Complex<Real> appell_F1(Real a, Real b1, Real b2, Real c, Complex<Real> z, Complex<Real> w,
                        const QuadratureSpec<Real>& qspec = {Real(1e-13), Real(1e-13), 14}) {
  if (!(c > a) || !(a > Real(0))) {
    throw invalid_input("appell_F1: Picard integral needs c > a > 0");
  }
  if (z == Complex<Real>(1) || w == Complex<Real>(1)) {
    throw singular_argument_error("appell_F1: argument on the singular hyperplane z = 1");
  }
  const Real mu = c - a;
  auto integrand = [&](Real /*t*/, Real da, Real db) -> Complex<Real> {
    const Complex<Real> f1 = std::pow((Complex<Real>(1) - z) + z * db, -b1);
    const Complex<Real> f2 = std::pow((Complex<Real>(1) - w) + w * db, -b2);
    return std::pow(da, a - 1) * std::pow(db, mu - 1) * f1 * f2;
  };
  return quad(integrand, Real(0), Real(1), qspec).value / beta(a, mu);
}

template <class Real>
struct LauricellaArgs {
  Real a;
  std::vector<Real> b;
  Real c;
  std::vector<Complex<Real>> z;
};

// Lauricella F_D^(n) via its Euler-type integral representation.
template <class Real>
Complex<Real> lauricella_FD(const LauricellaArgs<Real>& args,
                            const QuadratureSpec<Real>& qspec = {Real(1e-13), Real(1e-13), 14}) {
  if (args.b.size() != args.z.size()) {
    throw invalid_input("lauricella_FD: b and z must have equal length");
  }
  if (!(args.c - args.a > Real(0)) || !(args.a > Real(0))) {
    throw invalid_input("lauricella_FD: integral representation needs c > a > 0");
  }
  for (const auto& zk : args.z) {
    if (zk == Complex<Real>(1)) {
      throw singular_argument_error("lauricella_FD: argument on the singular hyperplane z_k = 1");
    }
  }
  const Real mu = args.c - args.a;
  auto integrand = [&](Real /*u*/, Real da, Real db) -> Complex<Real> {
    Complex<Real> p = std::pow(da, args.a - 1) * std::pow(db, mu - 1);
    for (std::size_t k = 0; k < args.z.size(); ++k) {
      p *= std::pow((Complex<Real>(1) - args.z[k]) + args.z[k] * db, -args.b[k]);
    }
    return p;
  };
  return quad(integrand, Real(0), Real(1), qspec).value / beta(args.a, mu);
}

}  // namespace quadmod
