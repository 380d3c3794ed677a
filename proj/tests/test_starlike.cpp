#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <tuple>
#include <vector>

#include "quadmod/starlike.hpp"
#include "quadmod/trapezoid.hpp"

using namespace quadmod;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("distortion of the starlike extension") {
  CHECK(K_of_order(1.0 / 3.0) == Catch::Approx(3.0).margin(1e-14));
  CHECK(K_of_order(1e-9) == Catch::Approx(1.0).margin(1e-7));
  CHECK(K_of_order(0.5) == Catch::Approx(3.0 + 2.0 * std::sqrt(2.0)).margin(1e-13));
  CHECK_THROWS_AS(K_of_order(0.0), invalid_input);
  CHECK_THROWS_AS(K_of_order(1.0), invalid_input);
}

TEST_CASE("order of the trapezoid about a center") {
  // square of side 2 about its midpoint: the corner rays dominate
  CHECK(std::tan(pi * order_of_center(0.5, 1.0, 1.0) / 2) == Catch::Approx(2.0).margin(1e-13));
  // the balanced center equalizes the two corner slopes
  const double c = 1.0, d = 2.0, s = c / (c + d);
  CHECK(c / s == Catch::Approx(d / (1.0 - s)).margin(1e-13));
  // order tends to 1 as the center slides to the boundary
  CHECK(order_of_center(1e-9, 1.0, 1.0) == Catch::Approx(1.0).margin(1e-8));
  CHECK_THROWS_AS(order_of_center(0.0, 1.0, 1.0), invalid_input);
}

TEST_CASE("upper bound for the reflection coefficient") {
  const auto sq = qr_upper(0.5, 0.5);
  CHECK(sq.tau == Catch::Approx(1.0).margin(1e-14));
  CHECK(sq.qr_upper == Catch::Approx(3.0 + 2.0 * std::sqrt(2.0)).margin(1e-13));
  CHECK(std::tan(pi * sq.alpha_order / 2) == Catch::Approx(sq.tau).margin(1e-12));
  // rectangle remark: c = d = a/2 gives the bound (sqrt(1+a^2)+a)^2
  for (double a : {1.0, 2.0, 5.0}) {
    const auto rep = qr_upper(a / 2, a / 2);
    const double expect = std::pow(std::sqrt(1.0 + a * a) + a, 2);
    CHECK(rep.qr_upper == Catch::Approx(expect).margin(1e-12 * expect));
    CHECK(rep.qr_upper == Catch::Approx(K_of_order(rep.alpha_order)).margin(1e-10));
  }
  const auto r12 = qr_upper(1.0, 2.0);
  CHECK(r12.tau == Catch::Approx(3.0).margin(1e-14));
  CHECK(r12.qr_upper == Catch::Approx(std::pow(std::sqrt(10.0) + 3.0, 2)).margin(1e-12));
}

TEST_CASE("radial function branches and continuity") {
  const double s = 0.5, c = 1.0, d = 1.0;
  CHECK(radial_function(pi / 2 - 1e-9, s, c, d) == Catch::Approx(s).margin(1e-7));
  CHECK(radial_function(0.0, s, c, d) == Catch::Approx((1.0 - s) * c + s * d).margin(1e-14));
  for (auto [cc, dd, ss] : std::vector<std::tuple<double, double, double>>{
           {1.0, 1.0, 0.5}, {1.0, 2.0, 1.0 / 3.0}, {0.5, 1.5, 0.25}}) {
    const double th1 = std::atan(ss / cc);
    const double th2 = std::atan((1.0 - ss) / dd);
    for (double corner : {th1, -th2}) {
      const double left = radial_function(corner - 1e-12, ss, cc, dd);
      const double right = radial_function(corner + 1e-12, ss, cc, dd);
      CHECK(std::abs(left - right) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(radial_function(pi / 2, s, c, d), invalid_input);
}

TEST_CASE("radial Lipschitz ratio attains the starlikeness order") {
  const double step = 1e-6;
  for (auto [c, d, s] : std::vector<std::tuple<double, double, double>>{
           {1.0, 1.0, 0.5}, {1.0, 2.0, 1.0 / 3.0}, {0.5, 1.5, 0.25}}) {
    const double expect = std::tan(pi * order_of_center(s, c, d) / 2);
    const double th1 = std::atan(s / c);
    const double th2 = std::atan((1.0 - s) / d);
    // three per-branch grids, excluding 1e-4 neighbourhoods of the corners
    const double margin = 1e-4;
    std::vector<std::pair<double, double>> branches = {
        {-pi / 2 + 1e-3, -th2 - margin}, {-th2 + margin, th1 - margin},
        {th1 + margin, pi / 2 - 1e-3}};
    double max_ratio = 0.0;
    for (const auto& [lo, hi] : branches) {
      for (int i = 0; i < 667; ++i) {
        const double th = lo + (hi - lo) * i / 666.0;
        const double rp = (radial_function(th + step, s, c, d) -
                           radial_function(th - step, s, c, d)) /
                          (2 * step);
        max_ratio = std::max(max_ratio, std::abs(rp) / radial_function(th, s, c, d));
      }
    }
    CHECK(max_ratio == Catch::Approx(expect).epsilon(1e-3));
    CHECK(max_ratio <= expect * (1.0 + 1e-9));  // the order really is a bound
  }
}

TEST_CASE("lower bounds never exceed the starlike upper bound") {
  const auto spec = make_trapezoid(0.3, 1.2);
  CHECK(qr_lower(spec) <= qr_upper(spec.c, spec.d).qr_upper);
}
