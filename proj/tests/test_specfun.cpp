#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "robinflow/errors.hpp"
#include "robinflow/specfun.hpp"

using namespace robinflow;
using specfun::binomial_general;
using specfun::g_upper;
using specfun::laguerre;

TEST_CASE("generalized binomial") {
  CHECK(binomial_general(5, 2) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(binomial_general(-3.7, 0) == 1.0);
  CHECK(binomial_general(0.123, 0) == 1.0);
  // (-1/2)(-3/2)/2 = 3/8
  CHECK(binomial_general(-0.5, 2) == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(binomial_general(3, 5) == 0.0);
}

TEST_CASE("laguerre basics and exact-rational oracle") {
  CHECK(laguerre(0, 7.3, 123.0) == 1.0);
  for (int n = -3; n <= 3; ++n)
    CHECK(laguerre(1, n, 0.77) == doctest::Approx(n + 1 - 0.77).epsilon(1e-15));
  // L_3^0(1) via the explicit sum in exact rationals: -2/3
  const double exact = oracles::laguerre_rational_sum(3, 0, 1, 1);
  CHECK(exact == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
  CHECK(laguerre(3, 0, 1.0) == doctest::Approx(exact).epsilon(1e-14));
  // more rational cross-checks across degrees and alphas
  for (int k = 0; k <= 12; ++k)
    for (int a = -2; a <= 3; ++a) {
      const double want = oracles::laguerre_rational_sum(k, a, 3, 4); // x = 3/4
      CHECK(laguerre(k, a, 0.75) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("laguerre recurrence and stability range") {
  oracles::Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 1 + int(rng.uniform(0, 40));
    const double a = rng.uniform(-2.0, 8.0);
    const double x = rng.uniform(0.0, 200.0);
    const double lhs = (k + 1) * laguerre(k + 1, a, x);
    const double rhs = (2 * k + 1 + a - x) * laguerre(k, a, x) - (k + a) * laguerre(k - 1, a, x);
    const double scale = std::fabs(lhs) + std::fabs(rhs) + 1.0;
    CHECK(std::fabs(lhs - rhs) / scale < 1e-10);
  }
  // evaluation stays finite and consistent with the rational sum at k = 50
  CHECK(std::isfinite(laguerre(50, 0.0, 200.0)));
  const double want = oracles::laguerre_rational_sum(20, 2, 7, 2); // x = 3.5
  CHECK(laguerre(20, 2, 3.5) == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("laguerre zeros are simple (sign analysis of derivative)") {
  // scan for roots; at each bracketed root the derivative -L^{a+1}_{k-1} must
  // be bounded away from zero
  for (const auto& [k, a] : {std::pair<int, int>{4, 0}, {5, 1}, {6, 2}}) {
    double prev_x = 1e-4, prev_v = laguerre(k, a, prev_x);
    for (double x = 0.05; x < 4.0 * k; x += 0.01) {
      const double v = laguerre(k, a, x);
      if ((prev_v < 0) != (v < 0)) {
        double lo = prev_x, hi = x;
        for (int it = 0; it < 60; ++it) {
          const double m = 0.5 * (lo + hi);
          ((laguerre(k, a, m) < 0) == (v < 0)) ? hi = m : lo = m;
        }
        const double root = 0.5 * (lo + hi);
        const double deriv = -laguerre(k - 1, a + 1, root);
        CHECK(std::fabs(deriv) > 1e-8);
      }
      prev_x = x;
      prev_v = v;
    }
  }
}

TEST_CASE("g_upper values") {
  CHECK(g_upper(0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
  CHECK(g_upper(2, 0.0) == doctest::Approx(2.0).epsilon(1e-14)); // Gamma(3) = 2
  // adaptive-quadrature value of int_1^inf e^{-z}/z dz
  CHECK(g_upper(-1, 1.0) == doctest::Approx(0.21938393439552026).epsilon(1e-12));
  CHECK_THROWS_AS(g_upper(-1, 0.0), error);
  CHECK_THROWS_AS(g_upper(-3, 0.0), error);
}

TEST_CASE("g_upper recurrence g_n(v) = v^n e^{-v} + n g_{n-1}(v)") {
  for (double v : {0.1, 1.0, 10.0}) {
    for (int n = 1; n <= 20; ++n) {
      const double lhs = g_upper(n, v);
      const double rhs = std::pow(v, n) * std::exp(-v) + n * g_upper(n - 1, v);
      CHECK(std::fabs(lhs - rhs) / std::fabs(lhs) < 1e-10);
    }
    // negative side too
    for (int n = -1; n >= -6; --n) {
      const double lhs = g_upper(n, v);
      const double rhs = std::pow(v, n) * std::exp(-v) + n * g_upper(n - 1, v);
      CHECK(std::fabs(lhs - rhs) / std::fabs(lhs) < 1e-9);
    }
  }
}
