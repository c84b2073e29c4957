#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "semcom/lambert_w.hpp"

using semcom::lambert_w0;

namespace {

// Independent oracle: bisection on w*exp(w) - x over a bracketing interval.
double lambert_bisect(double x, double lo, double hi) {
  auto f = [x](double w) { return w * std::exp(w) - x; };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("known values") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  // frozen from the bisection oracle on [0, 1]
  CHECK(lambert_w0(1.0) == doctest::Approx(0.5671432904097838).epsilon(1e-12));
}

TEST_CASE("matches bisection oracle") {
  CHECK(std::abs(lambert_w0(1.0) - lambert_bisect(1.0, 0.0, 1.0)) < 1e-10);
  CHECK(std::abs(lambert_w0(10.0) - lambert_bisect(10.0, 0.0, 3.0)) < 1e-10);
  CHECK(std::abs(lambert_w0(1e-3) - lambert_bisect(1e-3, 0.0, 1.0)) < 1e-10);
}

TEST_CASE("defining identity on a log grid") {
  // x = 0 plus a log grid over [1e-6, 1e9]
  CHECK(std::abs(lambert_w0(0.0) * std::exp(lambert_w0(0.0)) - 0.0) == 0.0);
  const int points = 60;
  for (int i = 0; i < points; ++i) {
    const double x = std::pow(10.0, -6.0 + 15.0 * i / (points - 1));
    const double w = lambert_w0(x);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-12 * std::fmax(1.0, x));
  }
}

TEST_CASE("monotone increasing") {
  double prev = lambert_w0(0.0);
  for (int i = 0; i < 200; ++i) {
    const double x = std::pow(10.0, -6.0 + 15.0 * i / 199.0);
    const double w = lambert_w0(x);
    CHECK(w > prev);
    prev = w;
  }
}

TEST_CASE("domain") {
  CHECK_THROWS_AS(lambert_w0(-1e-9), std::domain_error);
  CHECK_THROWS_AS(lambert_w0(-1.0), std::domain_error);
  // very large arguments still satisfy the identity in log form
  const double x = 1e200;
  const double w = lambert_w0(x);
  CHECK(std::abs(w + std::log(w) - std::log(x)) < 1e-12 * std::log(x));
}
