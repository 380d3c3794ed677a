#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "quadmod/quadrature.hpp"

using quadmod::QuadratureSpec;
using quadmod::quad;

TEST_CASE("unit integral") {
  const auto r = quad([](double) { return 1.0; }, 0.0, 1.0);
  CHECK(r.value == Catch::Approx(1.0).margin(1e-14));
  CHECK(r.error <= 1e-12);
}

TEST_CASE("algebraic endpoint singularity") {
  const auto r = quad([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0);
  CHECK(r.value == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("degenerate interval") {
  CHECK(quad([](double t) { return t; }, 0.3, 0.3).value == 0.0);
}

TEST_CASE("square-case side integrand is stable across refinement levels") {
  // J1 integrand for angles 1/2,1/2,1/2 at t = 2, z0 = 1 + i
  const std::complex<double> z0(1.0, 1.0);
  auto f = [&](double x, double da, double db) {
    const double n2 = std::norm(std::complex<double>(1.0, 0.0) - x / z0);
    return std::pow(da, 0.5) * std::pow(db, 0.5) * std::sqrt((1.0 + db) / 2.0) / (n2 * n2);
  };
  const auto coarse = quad(f, 0.0, 1.0, QuadratureSpec<double>{1e-10, 1e-10, 12});
  const auto fine = quad(f, 0.0, 1.0, QuadratureSpec<double>{1e-14, 1e-14, 14});
  CHECK(std::abs(coarse.value - fine.value) <= 1e-12);
}

TEST_CASE("error estimate honours the requested tolerance") {
  const QuadratureSpec<double> spec{1e-10, 1e-10, 12};
  const auto r = quad([](double t) { return std::exp(t); }, 0.0, 1.0, spec);
  CHECK(r.error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(r.value)));
  CHECK(r.value == Catch::Approx(std::exp(1.0) - 1.0).margin(1e-12));
}

TEST_CASE("complex-valued integrands") {
  const auto r = quad(
      [](double t) {
        return std::exp(std::complex<double>(0.0, t));
      },
      0.0, 1.0);
  CHECK(r.value.real() == Catch::Approx(std::sin(1.0)).margin(1e-13));
  CHECK(r.value.imag() == Catch::Approx(1.0 - std::cos(1.0)).margin(1e-13));
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS_AS(quad([](double t) { return t; }, 0.0, 1.0, QuadratureSpec<double>{-1.0, 1e-12, 12}),
                  quadmod::invalid_input);
  CHECK_THROWS_AS(quad([](double t) { return t; }, 0.0, 1.0, QuadratureSpec<double>{1e-12, 1e-12, 0}),
                  quadmod::invalid_input);
  CHECK_THROWS_AS(quad([](double t) { return t; }, 1.0, 0.0), quadmod::invalid_input);
}

TEST_CASE("refinement cap signals non-convergence") {
  const QuadratureSpec<double> tight{1e-15, 1e-15, 2};
  CHECK_THROWS_AS(quad([](double t) { return std::cos(40.0 * t * t); }, 0.0, 1.0, tight),
                  quadmod::convergence_error);
}
