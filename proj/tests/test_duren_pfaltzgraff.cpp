#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "quadmod/duren_pfaltzgraff.hpp"

using quadmod::dp_height;
using quadmod::dp_modulus_of_height;
using quadmod::k_of_t;

TEST_CASE("k of t") {
  CHECK(k_of_t(2.0) == Catch::Approx(3.0 - 2.0 * std::sqrt(2.0)).margin(1e-15));
  CHECK(k_of_t(2.0) == Catch::Approx(0.1715728752538083).margin(1e-15));
  CHECK(k_of_t(1.0 + 1e-12) == Catch::Approx(0.0).margin(1e-12));
  CHECK(k_of_t(1.966910456214164) > 0.0);
  CHECK_THROWS_AS(k_of_t(1.0), quadmod::invalid_input);
}

TEST_CASE("rectangle aspect ratio from the half-plane parameter") {
  CHECK(dp_height(0.1715728752538083) == Catch::Approx(1.0).margin(1e-13));
  CHECK(dp_height(0.2589511664373517) == Catch::Approx(2.0).margin(1e-12));
  CHECK(dp_height(0.7306010544314864) == Catch::Approx(50.0).margin(1e-9));
  CHECK_THROWS_AS(dp_height(0.0), quadmod::invalid_input);
  CHECK_THROWS_AS(dp_height(1.0), quadmod::invalid_input);
}

TEST_CASE("modulus of a rectangle by aspect ratio") {
  CHECK(dp_modulus_of_height(1.0) == Catch::Approx(1.0).margin(1e-12));
  CHECK(dp_modulus_of_height(0.5) == Catch::Approx(1.154924858699707).margin(1e-12));
  CHECK(dp_modulus_of_height(0.1) == Catch::Approx(1.580900257847724).margin(1e-12));
  CHECK_THROWS_AS(dp_modulus_of_height(0.0), quadmod::invalid_input);
}

TEST_CASE("psi inversion round-trips") {
  for (double h : {0.2, 1.0, 5.0}) {
    // psi^-1 through the modulus route, then forward again
    const double m = dp_modulus_of_height(h);
    const double r = quadmod::mu_inv(std::numbers::pi * m);
    CHECK(dp_height(r) == Catch::Approx(h).margin(1e-10));
  }
}

TEST_CASE("aspect ratio increases with t") {
  double prev = 0.0;
  for (double t : {1.2, 1.5, 2.0, 4.0, 10.0, 100.0}) {
    const double h = dp_height(k_of_t(t));
    CHECK(h > prev);
    prev = h;
  }
}
