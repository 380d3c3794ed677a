#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "quadmod/elliptic.hpp"
#include "quadmod/hypergeometric.hpp"
#include "quadmod/quadrature.hpp"

using quadmod::ellip_E;
using quadmod::ellip_K;
using quadmod::mu;
using quadmod::mu_inv;

namespace {
constexpr double pi = std::numbers::pi;

// Legendre-form integral, the defining representation; the AGM route must
// agree with it.
double K_by_quadrature(double lambda) {
  auto f = [&](double t, double, double db) {
    const double omt2 = db * (1.0 + t);
    const double oml = (1.0 - lambda * t) * (1.0 + lambda * t);
    return 1.0 / std::sqrt(omt2 * oml);
  };
  return quadmod::quad(f, 0.0, 1.0, quadmod::QuadratureSpec<double>{1e-14, 1e-14, 14}).value;
}
}  // namespace

TEST_CASE("complete elliptic integral endpoints") {
  CHECK(ellip_K(0.0) == Catch::Approx(pi / 2).margin(1e-15));
  CHECK(ellip_E(0.0) == Catch::Approx(pi / 2).margin(1e-15));
  CHECK(ellip_E(1.0) == 1.0);
}

TEST_CASE("K agrees with its hypergeometric form") {
  for (double lam = 0.1; lam < 0.95; lam += 0.1) {
    const double via_series = pi / 2 * quadmod::gauss_2F1(0.5, 0.5, 1.0, lam * lam);
    CHECK(std::abs(ellip_K(lam) - via_series) <= 1e-12);
  }
}

TEST_CASE("K agrees with the Legendre integral") {
  for (double lam : {0.05, 0.3, 0.6, 0.9, 0.99}) {
    CHECK(ellip_K(lam) == Catch::Approx(K_by_quadrature(lam)).margin(2e-13));
  }
}

TEST_CASE("K rejects the logarithmic endpoint") {
  CHECK_THROWS_AS(ellip_K(1.0), quadmod::invalid_input);
  CHECK_THROWS_AS(ellip_K(1.0 - 1e-17), quadmod::invalid_input);
  CHECK_THROWS_AS(ellip_K(-0.1), quadmod::invalid_input);
  CHECK_THROWS_AS(ellip_E(1.5), quadmod::invalid_input);
}

TEST_CASE("mu at the symmetric point") {
  CHECK(mu(1.0 / std::sqrt(2.0)) == Catch::Approx(pi / 2).margin(1e-14));
}

TEST_CASE("mu telescoping product") {
  const double r = 0.3;
  const double rp = std::sqrt(1.0 - r * r);
  CHECK(mu(r) * mu(rp) == Catch::Approx(pi * pi / 4).margin(1e-13));
}

TEST_CASE("mu is strictly decreasing") {
  double prev = mu(1.0 / 101.0);
  for (int i = 2; i <= 100; ++i) {
    const double cur = mu(i / 101.0);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("mu derivative matches the closed form") {
  const double h = 1e-5;
  for (double r : {0.2, 0.5, 0.8}) {
    const double fd = (mu(r + h) - mu(r - h)) / (2 * h);
    const double K = ellip_K(r);
    const double formula = -pi * pi / (4 * r * (1 - r * r) * K * K);
    CHECK(std::abs(fd - formula) <= 1e-6);
  }
}

TEST_CASE("mu domain") {
  CHECK_THROWS_AS(mu(0.0), quadmod::invalid_input);
  CHECK_THROWS_AS(mu(1.0), quadmod::invalid_input);
}

TEST_CASE("mu inverse round-trips") {
  for (double r : {0.05, 0.3, 1.0 / std::sqrt(2.0), 0.95}) {
    CHECK(mu_inv(mu(r)) == Catch::Approx(r).margin(1e-13));
  }
}
