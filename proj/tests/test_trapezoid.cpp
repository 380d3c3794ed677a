#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "quadmod/trapezoid.hpp"

using namespace quadmod;

namespace {
constexpr double pi = std::numbers::pi;

// Independent solver for the interior equation: bisection over the base-ratio
// built from the fixed 400-point rule.
double interior_lambda_oracle(double alpha, double c, double d) {
  auto ratio = [&](double lam) {
    const double base = oracles::tanh_sinh_400([&](double t, double, double db) {
      const double omt2 = db * (1.0 + t);
      const double oml = ((1.0 - lam) + lam * db) * (1.0 + lam * t);
      return std::pow(omt2, -alpha) * std::pow(oml, alpha - 1.0);
    });
    const double tail = std::pow(lam, 2 * alpha - 1.0) *
                        oracles::tanh_sinh_400([&](double s, double, double db) {
                          const double oms2 = db * (1.0 + s);
                          const double oml = ((1.0 - lam) + lam * db) * (1.0 + lam * s);
                          return std::pow(oms2, alpha - 1.0) * std::pow(oml, -alpha);
                        });
    return base / tail;
  };
  double lo = 1e-6, hi = 1.0 - 1e-6;
  while (hi - lo > 1e-13) {
    const double m = 0.5 * (lo + hi);
    (ratio(m) < c / d ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}

double exterior_k_oracle(double alpha, double c, double d) {
  auto ratio = [&](double k) {
    const double a = exterior_a_of_k(alpha, k);
    const double base = oracles::tanh_sinh_400([&](double s, double, double db) {
      const double oms2 = db * (1.0 + s);
      const double omk = ((1.0 - k) + k * db) * (1.0 + k * s);
      const double den = 1.0 + a * a * s * s;
      return std::pow(oms2, alpha) * std::pow(omk, 1.0 - alpha) / (den * den);
    });
    const double tail = std::pow(k, 3.0 - 2 * alpha) *
                        oracles::tanh_sinh_400([&](double s, double, double db) {
                          const double oms2 = db * (1.0 + s);
                          const double omk = ((1.0 - k) + k * db) * (1.0 + k * s);
                          const double den = a * a + k * k * s * s;
                          return std::pow(omk, alpha) * std::pow(oms2, 1.0 - alpha) / (den * den);
                        });
    return base / tail;
  };
  double lo = 1e-6, hi = 1.0 - 1e-6;
  while (hi - lo > 1e-13) {
    const double m = 0.5 * (lo + hi);
    (ratio(m) < c / d ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}
}  // namespace

TEST_CASE("trapezoid construction") {
  const auto spec = make_trapezoid(0.25, 1.0);
  CHECK(spec.d == Catch::Approx(2.0).margin(1e-14));  // cot(pi/4) = 1
  CHECK(make_trapezoid(0.5, 1.5).d == 1.5);
  CHECK_THROWS_AS(make_trapezoid(0.6, 1.0), invalid_input);
  CHECK_THROWS_AS(make_trapezoid(0.25, -1.0), invalid_input);
  TrapezoidSpec<double> bad{0.25, 1.0, 1.5};  // d - c != cot(pi/4)
  CHECK_THROWS_AS(validate_trapezoid(bad), invalid_input);
}

TEST_CASE("interior parameter against the independent oracle") {
  const auto spec = make_trapezoid(0.25, 1.0);
  const double lam = interior_lambda(spec);
  CHECK(lam == Catch::Approx(interior_lambda_oracle(0.25, spec.c, spec.d)).margin(1e-12));
  CHECK(interior_equation_hyper(spec.alpha, lam) == Catch::Approx(spec.d / spec.c).margin(1e-9));
  CHECK_THROWS_AS(interior_lambda(make_trapezoid(0.5, 1.0)), invalid_input);
}

TEST_CASE("interior equation is monotone in lambda") {
  const auto spec = make_trapezoid(0.25, 1.0);
  const QuadratureSpec<double> qs{1e-12, 1e-12, 14};
  double prev = 0.0;
  for (double lam : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double r = detail::interior_base_integral(spec.alpha, lam, qs) /
                     detail::interior_tail_total(spec.alpha, lam, qs);
    CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("rectangle interior parameter") {
  CHECK(interior_lambda_rectangle(1.0) == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-13));
  for (double c : {0.3, 1.0, 3.0}) {
    const double lam = interior_lambda_rectangle(c);
    CHECK(2 * ellip_K(lam) / ellip_K(comp_modulus(lam)) == Catch::Approx(2 * c).margin(1e-10));
  }
}

TEST_CASE("interior modulus") {
  CHECK(interior_modulus(make_trapezoid(0.5, 1.0)) == Catch::Approx(2.0).margin(1e-10));
  const auto spec = make_trapezoid(0.25, 1.0);
  const double lam = interior_lambda_oracle(0.25, spec.c, spec.d);
  CHECK(interior_modulus(spec) ==
        Catch::Approx(2 * ellip_K(lam) / ellip_K(comp_modulus(lam))).margin(1e-10));
  // Hayman-style sandwich: the modulus sits between the base widths
  const auto longer = make_trapezoid(0.25, 5.0);
  const double m = interior_modulus(longer);
  CHECK(m >= 2 * longer.c);
  CHECK(m <= 2 * longer.d);
}

TEST_CASE("residue relation of the exterior prevertex pair") {
  CHECK(exterior_a_of_k(0.5, 0.3) == Catch::Approx(std::sqrt(0.3)).margin(1e-15));
  const double a = exterior_a_of_k(0.25, 0.5);
  const double b = a / 0.5;
  CHECK(std::abs(0.25 / (1 + a * a) + 0.75 / (1 + b * b) - 0.5) <= 1e-14);
  CHECK(exterior_a_of_k(0.3, 1.0 - 1e-12) == Catch::Approx(1.0).margin(1e-6));
  double worst = 0.0;
  for (int i = 1; i <= 10; ++i) {
    for (int j = 1; j <= 10; ++j) {
      const double alpha = 0.05 * i, k = j / 11.0;
      const double aa = exterior_a_of_k(alpha, k);
      const double bb = aa / k;
      worst = std::max(worst,
                       std::abs(alpha / (1 + aa * aa) + (1 - alpha) / (1 + bb * bb) - 0.5));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("exterior parameter against the independent oracle") {
  const auto spec = make_trapezoid(0.25, 1.0);
  const double k = exterior_k(spec);
  CHECK(k == Catch::Approx(exterior_k_oracle(0.25, spec.c, spec.d)).margin(1e-12));
  CHECK(exterior_equation_hyper(spec.alpha, k) == Catch::Approx(spec.d / spec.c).margin(1e-8));
  CHECK_THROWS_AS(exterior_k(make_trapezoid(0.5, 1.0)), invalid_input);
  // mod(T-) through the solved parameter
  CHECK(exterior_modulus_trapezoid(spec) ==
        Catch::Approx(2 * ellip_K(k) / ellip_K(comp_modulus(k))).margin(1e-12));
}

TEST_CASE("rectangle exterior parameter matches the half-plane picture") {
  // width-2 rectangle of height 1 corresponds to the aspect-2 corner quadruple
  const double k = exterior_k_rectangle(1.0);
  const double mod = 2 * ellip_K(k) / ellip_K(comp_modulus(k));
  CHECK(mod == Catch::Approx(dp_modulus_of_height(0.5)).margin(1e-10));
}

TEST_CASE("boundary correspondence agrees with direct quadrature") {
  const auto spec = make_trapezoid(0.25, 1.0);
  const double lam = interior_lambda(spec);
  const QuadratureSpec<double> qs{1e-13, 1e-13, 14};

  CHECK(boundary_interior(0.0, spec.alpha, lam) == 0.0);
  // partial intervals stop short of the singular endpoints, so the plain
  // integrand forms are exact enough for the comparison
  auto fint = [&](double t) {
    return std::pow(1.0 - t * t, -spec.alpha) *
           std::pow(1.0 - lam * lam * t * t, spec.alpha - 1.0);
  };
  const double bc07 = boundary_interior(0.7, spec.alpha, lam);
  CHECK(bc07 == Catch::Approx(quad(fint, 0.0, 0.7, qs).value).margin(1e-11));
  const double bc1 = boundary_interior(1.0, spec.alpha, lam);
  auto fint_full = [&](double t, double, double db) {
    const double omt2 = db * (1.0 + t);
    const double oml = ((1.0 - lam) + lam * db) * (1.0 + lam * t);
    return std::pow(omt2, -spec.alpha) * std::pow(oml, spec.alpha - 1.0);
  };
  CHECK(bc1 == Catch::Approx(quad(fint_full, 0.0, 1.0, qs).value).margin(1e-10));
  // tail point x = 3/lambda against the substituted tail integral
  const double xt = 3.0 / lam;
  auto ftail = [&](double s) {
    return std::pow(1.0 - s * s, spec.alpha - 1.0) *
           std::pow(1.0 - lam * lam * s * s, -spec.alpha);
  };
  const double tail_direct =
      std::pow(lam, 2 * spec.alpha - 1.0) * quad(ftail, 0.0, 1.0 / (lam * xt), qs).value;
  CHECK(boundary_interior(xt, spec.alpha, lam) == Catch::Approx(tail_direct).margin(1e-11));
  // the gap (1, 1/lambda] carries no boundary point
  CHECK_THROWS_AS(boundary_interior(1.0 + (1.0 / lam - 1.0) / 2, spec.alpha, lam), invalid_input);

  const double k = exterior_k(spec);
  const double a = exterior_a_of_k(spec.alpha, k);
  CHECK(boundary_exterior(0.0, spec.alpha, k) == 0.0);
  auto fext = [&](double s) {
    const double den = 1.0 + a * a * s * s;
    return std::pow(1.0 - s * s, spec.alpha) * std::pow(1.0 - k * k * s * s, 1.0 - spec.alpha) /
           (den * den);
  };
  CHECK(boundary_exterior(0.6, spec.alpha, k) ==
        Catch::Approx(quad(fext, 0.0, 0.6, qs).value).margin(1e-11));
  const double yt = 2.5 / k;
  auto fetail = [&](double s) {
    const double den = a * a + k * k * s * s;
    return std::pow(1.0 - k * k * s * s, spec.alpha) * std::pow(1.0 - s * s, 1.0 - spec.alpha) /
           (den * den);
  };
  const double etail_direct =
      std::pow(k, 3.0 - 2 * spec.alpha) * quad(fetail, 0.0, 1.0 / (k * yt), qs).value;
  CHECK(boundary_exterior(yt, spec.alpha, k) == Catch::Approx(etail_direct).margin(1e-11));
  CHECK_THROWS_AS(boundary_exterior(1.5, spec.alpha, k), invalid_input);
}

TEST_CASE("g and its maximum point") {
  CHECK(lambda0<double>() == Catch::Approx(0.7373921).margin(1e-7));
  CHECK(g_function(lambda0<double>()) == Catch::Approx(0.708434).margin(1e-6));
  CHECK(2 * g_function(lambda0<double>()) == Catch::Approx(1.4168687).margin(1e-7));
}

TEST_CASE("g is concave and dominates its chord") {
  const double l0 = lambda0<double>();
  const double gl0 = g_function(l0);
  double prev2 = 0.0, prev1 = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double lam = 0.05 + 0.9 * i / 49.0;
    const double g = g_function(lam);
    if (i >= 2) CHECK(g - 2 * prev1 + prev2 < 0.0);  // second divided difference
    prev2 = prev1;
    prev1 = g;
    if (lam <= l0 - 0.01) CHECK(g > gl0 * lam);
  }
}

TEST_CASE("rectangle lower bound") {
  const double l0 = lambda0<double>();
  for (double d : {0.7, 1.0, 3.0}) {
    CHECK(rectangle_lower_bound(d, l0 * d) == Catch::Approx(1.4168687 * d).margin(1e-6 * d));
  }
  CHECK(rectangle_lower_bound(2.0, 1.0) == Catch::Approx(2 * g_function(0.5) * 2.0).margin(1e-13));
  // monotone decrease towards the degenerate corner delta = d
  CHECK(rectangle_lower_bound(1.0, 1.0) == 0.0);
  CHECK(rectangle_lower_bound(1.0, 0.9999) < rectangle_lower_bound(1.0, 0.999));
  CHECK_THROWS_AS(rectangle_lower_bound(1.0, 1.5), invalid_input);
}

TEST_CASE("shear-map constant") {
  CHECK(C_alpha(0.25) == Catch::Approx((3.0 - std::sqrt(5.0)) / 2).margin(1e-14));
  CHECK(C_alpha(1e-9) == Catch::Approx(1.0).margin(1e-7));
  CHECK(C_alpha(0.5) == 0.0);
  const double T = std::tan(pi * 0.3);
  const double K = (std::sqrt(4.0 + T * T) + T) * (std::sqrt(4.0 + T * T) + T) / 4.0;
  CHECK(C_alpha(0.3) * K == Catch::Approx(1.0).margin(1e-13));
}

TEST_CASE("natural-vertex lower bound") {
  const auto spec = make_trapezoid(0.25, 1.0);
  const double val = ml_natural(spec);
  CHECK(val >= 1.0);
  const double lam = interior_lambda(spec);
  const double k = exterior_k(spec);
  const double ratio = (2 * ellip_K(lam) / ellip_K(comp_modulus(lam))) /
                       (2 * ellip_K(k) / ellip_K(comp_modulus(k)));
  CHECK(val == Catch::Approx(std::max(ratio, 1.0 / ratio)).margin(1e-12));
}

TEST_CASE("shifted-vertex lower bound") {
  const double l0 = lambda0<double>();
  const double gl0 = g_function(l0);
  // rectangle: C(1/2) = 0
  CHECK(ml_shifted(make_trapezoid(0.5, 1.0)) == Catch::Approx(gl0).margin(1e-12));
  // c/d above lambda0
  const auto wide = make_trapezoid(0.25, 3.0);  // c = 3, d = 4
  CHECK(wide.c / wide.d >= l0);
  CHECK(ml_shifted(wide) == Catch::Approx(gl0 * (1.0 + C_alpha(0.25)) * 4.0).margin(1e-12));
  // c/d below lambda0
  const auto narrow = make_trapezoid(0.25, 0.5);  // c = 0.5, d = 1.5
  CHECK(narrow.c / narrow.d < l0);
  CHECK(ml_shifted(narrow) ==
        Catch::Approx(g_function(1.0 / 3.0) * (1.0 + C_alpha(0.25)) * 1.5).margin(1e-12));
}

TEST_CASE("enhanced bound sharpens the shifted bound") {
  const auto spec = make_trapezoid(0.25, 1.0);
  const double enh = ml_enhanced(spec);
  CHECK(enh >= ml_shifted(spec));
  // delta = c branch: x* and y* sit at the prevertex 1
  const auto narrow = make_trapezoid(0.25, 0.5);
  CHECK(std::isfinite(ml_enhanced(narrow)));
  // rectangle dispatch
  CHECK(std::isfinite(ml_enhanced(make_trapezoid(0.5, 1.0))));
}

TEST_CASE("qr lower bound") {
  const auto spec = make_trapezoid(0.25, 1.0);
  CHECK(qr_lower(spec) >= ml_shifted(spec));
  // rectangles also use the doubled shifted route
  const auto rect = make_trapezoid(0.5, 1.5);
  CHECK(qr_lower(rect) >= 1.4168687 * rect.d - 1e-6);
}

TEST_CASE("bounds report is internally consistent") {
  const auto rep = bounds_report(make_trapezoid(0.25, 1.0));
  CHECK(rep.lambda > 0.0);
  CHECK(rep.lambda < 1.0);
  CHECK(rep.k > 0.0);
  CHECK(rep.k < 1.0);
  CHECK(rep.ml_natural ==
        Catch::Approx(std::max(rep.mod_interior / rep.mod_exterior,
                               rep.mod_exterior / rep.mod_interior))
            .margin(1e-12));
  CHECK(rep.qr_lower <= rep.qr_upper);
}
