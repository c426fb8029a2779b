#include "catch_amalgamated.hpp"

#include "perpstat/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

using namespace perpstat;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

// Closed forms give independent oracles for the special cases below.

TEST_CASE("chi-square with two degrees of freedom is exponential", "[dist]") {
  for (double x : {0.01, 0.5, 1.0, 3.84, 10.0, 50.0}) {
    CHECK_THAT(dist::chi_square_sf(x, 2), WithinRel(std::exp(-x / 2), 1e-12));
  }
  CHECK(dist::chi_square_sf(0.0, 3) == 1.0);
  CHECK(dist::chi_square_sf(std::numeric_limits<double>::infinity(), 3) == 0.0);
  CHECK_THAT(dist::chi_square_sf(3.841458820694124, 1), WithinAbs(0.05, 1e-12));
}

TEST_CASE("Student t with one degree of freedom is Cauchy", "[dist]") {
  for (double t : {-5.0, -1.0, 0.0, 0.3, 2.0, 40.0}) {
    const double cauchy = 1.0 - 2.0 / std::numbers::pi * std::atan(std::abs(t));
    CHECK_THAT(dist::student_t_two_sided(t, 1), WithinAbs(cauchy, 1e-13));
  }
  CHECK(dist::student_t_two_sided(std::numeric_limits<double>::infinity(), 10) == 0.0);
  CHECK_THAT(dist::student_t_two_sided(1.959963984540054, 1e9), WithinAbs(0.05, 1e-8));
}

TEST_CASE("F with two numerator degrees of freedom has a closed form", "[dist]") {
  for (double d2 : {3.0, 10.0, 97.0}) {
    for (double x : {0.1, 1.0, 4.0, 25.0}) {
      CHECK_THAT(dist::f_sf(x, 2, d2), WithinRel(std::pow(1 + 2 * x / d2, -d2 / 2), 1e-11));
    }
  }
  CHECK(dist::f_sf(0.0, 3, 10) == 1.0);
  CHECK(dist::f_sf(std::numeric_limits<double>::infinity(), 3, 10) == 0.0);
}

TEST_CASE("normal cdf", "[dist]") {
  CHECK(dist::normal_cdf(0.0) == 0.5);
  CHECK_THAT(dist::normal_cdf(1.959963984540054), WithinAbs(0.975, 1e-14));
  CHECK(dist::normal_cdf(-std::numeric_limits<double>::infinity()) == 0.0);
  CHECK(dist::normal_cdf(std::numeric_limits<double>::infinity()) == 1.0);
}
