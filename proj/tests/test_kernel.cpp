#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "robinflow/errors.hpp"
#include "robinflow/kernel.hpp"

using namespace robinflow;
using kernel::cplx;
using kernel::eval_E;
using kernel::eval_I_0;
using kernel::eval_I_inf;
using kernel::KernelParams;

TEST_CASE("split point solves coth(h) = 4") {
  const double h = kernel::split_point();
  CHECK(h == doctest::Approx(0.25541281188299536).epsilon(1e-15));
  CHECK(std::cosh(h) / std::sinh(h) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(h > 0.0);
  CHECK(h < 1.0);
}

TEST_CASE("split integrals against the t-form oracle (d = 1)") {
  // frozen anchors from the direct t-variable quadrature
  CHECK(eval_I_inf(1, 0.0, 1.0).real() == doctest::Approx(0.41715549501810734).epsilon(1e-9));
  CHECK(eval_I_0(1, 0.0, 1.0).real() == doctest::Approx(0.0038689432226013632).epsilon(1e-8));
  for (double nu : {0.0, 0.4, 0.9, -1.3}) {
    for (double s : {0.2, 1.0, 3.0}) {
      CHECK(eval_I_inf(1, nu, s).real() ==
            doctest::Approx(oracles::Iinf_t_form(1, nu, s)).epsilon(1e-8));
      CHECK(eval_I_0(1, nu, s).real() ==
            doctest::Approx(oracles::I0_t_form(1, nu, s)).epsilon(1e-8));
      CHECK(std::fabs(eval_I_inf(1, nu, s).imag()) < 1e-12);
    }
  }
  // d = 2 with the t-form as well
  CHECK(eval_I_inf(2, 0.7, 0.5).real() ==
        doctest::Approx(oracles::Iinf_t_form(2, 0.7, 0.5)).epsilon(1e-8));
  CHECK(eval_I_0(2, 0.7, 0.5).real() ==
        doctest::Approx(oracles::I0_t_form(2, 0.7, 0.5)).epsilon(1e-8));
}

TEST_CASE("I_inf is smooth up to s = 0 and extends across the first pole") {
  // (d=2, nu=0.5, s=0): finite; frozen from independent quadrature
  CHECK(eval_I_inf(2, 0.5, 0.0).real() == doctest::Approx(4.063203440167591).epsilon(1e-9));
  // lifted continuation must agree with the plain integral below the pole
  CHECK(eval_I_inf(1, 0.9, 1.0).real() ==
        doctest::Approx(oracles::Iinf_t_form(1, 0.9, 1.0)).epsilon(1e-8));
  // value beyond the first pole stays finite (continuation region)
  CHECK(std::isfinite(eval_I_inf(1, cplx(1.7, 0.0), 0.7).real()));
  CHECK_THROWS_AS(eval_I_inf(1, cplx(1.0, 0.0), 0.5), error);
  CHECK_THROWS_AS(eval_I_inf(1, cplx(3.0, 0.0), 0.5), error);
}

TEST_CASE("holomorphy probe: Cauchy-Riemann residual in the continued region") {
  const double s = 0.8, h = 1e-4;
  for (const cplx nu0 : {cplx(1.6, 0.3), cplx(2.4, -0.2)}) {
    const cplx fx =
        (eval_I_inf(1, nu0 + h, s) - eval_I_inf(1, nu0 - h, s)) / (2.0 * h);
    const cplx fy = (eval_I_inf(1, nu0 + cplx(0, h), s) - eval_I_inf(1, nu0 - cplx(0, h), s)) /
                    (2.0 * h);
    // d/dnu_bar = (fx + i fy)/2 must vanish
    CHECK(std::abs(0.5 * (fx + cplx(0, 1) * fy)) < 1e-6);
  }
}

TEST_CASE("decay I(nu, s) = O(s^N e^{-s}) for large s") {
  // log|I| + s fitted against log s over [10, 60]
  std::vector<double> xs, ys;
  for (double s = 10; s <= 60; s += 10) {
    const double v = (eval_I_0(1, 0.3, s) + eval_I_inf(1, 0.3, s)).real();
    CHECK(v > 0);
    xs.push_back(std::log(s));
    ys.push_back(std::log(v) + s);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int m = (int)xs.size();
  for (int i = 0; i < m; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / m;
  for (int i = 0; i < m; ++i) CHECK(std::fabs(ys[i] - slope * xs[i] - icpt) < 0.2);
}

TEST_CASE("small-s expansion structure and residual order") {
  using kernel::small_s_expansion;
  SUBCASE("d = 1 leading is -log(s)") {
    const auto tab = small_s_expansion(1, 0.0, 0);
    REQUIRE(tab.leading_is_log);
    CHECK(tab.leading_coeff.real() == doctest::Approx(-1.0).epsilon(1e-12));
  }
  SUBCASE("d = 3 leading is 1! s^{-2}") {
    const auto tab = small_s_expansion(3, 0.0, 0);
    CHECK(tab.leading_power == -2);
    CHECK(tab.leading_coeff.real() == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("order ceiling") { CHECK_THROWS_AS(small_s_expansion(1, 0.0, 9), error); }
  SUBCASE("residual shrinks at the predicted order") {
    for (int order : {2, 4}) {
      const auto tab = small_s_expansion(1, 0.4, order);
      for (double s : {1e-2, 1e-3, 1e-4}) {
        const double resid = std::abs(eval_I_0(1, 0.4, s) - tab.eval(s));
        // O(s^{order+1} log s) plus the quadrature noise floor of eval_I_0
        const double bound = 30.0 * std::pow(s, order + 1) * std::fabs(std::log(s)) + 3e-9;
        CHECK(resid < bound);
      }
    }
    // reproduces eval_I_0 on the mesh (order 2 example)
    const auto tab = small_s_expansion(1, 0.0, 2);
    for (double s = 1e-4; s <= 1e-2; s *= 4)
      CHECK(std::abs(eval_I_0(1, 0.0, s) - tab.eval(s)) < 1e-6);
  }
  SUBCASE("d = 2 head") {
    const auto tab = small_s_expansion(2, 0.5, 3);
    CHECK(tab.power_coeffs.at(-1).real() == doctest::Approx(1.0).epsilon(1e-12));
    for (double s : {1e-3, 1e-4}) {
      const cplx val = eval_I_0(2, 0.5, s);
      CHECK(std::abs(val - tab.eval(s)) <
            50.0 * std::pow(s, 4) * std::fabs(std::log(s)) + 1e-9 * std::abs(val));
    }
  }
}

TEST_CASE("fundamental solution") {
  KernelParams p;
  p.b = 1.0;
  p.d = 1;
  p.mu = 0.4;

  SUBCASE("diagonal guard") {
    CHECK_THROWS_AS(eval_E(p, {1.0, 0.0}, {1.0, 0.0}), error);
  }
  SUBCASE("hermiticity under swap") {
    const std::vector<double> x{0.3, -0.7}, y{1.1, 0.4};
    const cplx exy = eval_E(p, x, y);
    const cplx eyx = eval_E(p, y, x);
    CHECK(std::abs(exy - std::conj(eyx)) < 1e-10 * std::abs(exy));
  }
  SUBCASE("compositional value at |x - y| = 2") {
    // x, y antipodal on the real axis: the phase is trivial and s = 1
    const cplx e = eval_E(p, {1.0, 0.0}, {-1.0, 0.0});
    const cplx want = (eval_I_0(1, 0.4, 1.0) + eval_I_inf(1, 0.4, 1.0)) / (2.0 * M_PI);
    CHECK(std::abs(e - want) < 1e-12 * std::abs(want));
  }
  SUBCASE("magnetic PDE residual converges at order 2") {
    const std::vector<double> y{0.2, -0.1};
    const std::vector<double> x{1.2, -0.1}; // |x-y| = 1
    auto u = [&](const std::vector<double>& xx) { return eval_E(p, xx, y); };
    std::vector<double> res;
    for (double h : {1e-2, 5e-3, 2.5e-3})
      res.push_back(std::abs(oracles::magnetic_fd_residual(p.b, p.mu.real(), u, x, h)));
    const double order1 = std::log2(res[0] / res[1]);
    const double order2 = std::log2(res[1] / res[2]);
    CHECK(order1 > 1.8);
    CHECK(order1 < 2.2);
    CHECK(order2 > 1.8);
    CHECK(order2 < 2.2);
  }
}

TEST_CASE("Landau projection kernel") {
  KernelParams p;
  p.b = 1.0;
  p.d = 1;

  SUBCASE("hermitian") {
    const std::vector<double> x{0.4, 0.3}, y{-0.2, 0.8};
    const cplx kxy = kernel::landau_projection_kernel(p, 1, x, y);
    const cplx kyx = kernel::landau_projection_kernel(p, 1, y, x);
    CHECK(std::abs(kxy - std::conj(kyx)) < 1e-8 * std::max(1.0, std::abs(kxy)));
  }
  SUBCASE("proportional to the basis-summation projector, q = 1") {
    oracles::Rng rng(7);
    std::vector<cplx> ratios;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> x{rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)};
      std::vector<double> y{rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)};
      if (trial < 3) y = x; // include diagonal pairs
      const cplx k = kernel::landau_projection_kernel(p, 1, x, y);
      const cplx o = oracles::lll_kernel_sum(p.b, x, y);
      ratios.push_back(k / o);
    }
    cplx mean = 0;
    for (const cplx r : ratios) mean += r;
    mean /= (double)ratios.size();
    double var = 0;
    for (const cplx r : ratios) var += std::norm(r - mean);
    var /= (double)ratios.size();
    CHECK(var < 1e-6);
    // the measured constant is a convention; record it for the curious
    INFO("measured residue/projector ratio = ", mean.real(), " + ", mean.imag(), "i");
    CHECK(std::abs(mean) > 0.1);
  }
  SUBCASE("q = 2 residue follows the e^{-s} L_1(2s) profile") {
    // res_{nu=3} of the continued I_inf equals -2 e^{-s} (1 - 2s); check the
    // contour engine against this analytically derived profile
    const std::vector<double> y{0.0, 0.0};
    for (double r : {0.4, 1.0, 1.7}) {
      const std::vector<double> x{r, 0.0};
      const double s = p.b * r * r / 4.0;
      const cplx k2 = kernel::landau_projection_kernel(p, 2, x, y);
      const double want = 2.0 / (4.0 * M_PI) * p.b * (-2.0) * std::exp(-s) * (1.0 - 2.0 * s);
      CHECK(k2.real() == doctest::Approx(want).epsilon(1e-7));
      CHECK(std::fabs(k2.imag()) < 1e-9);
    }
  }
  SUBCASE("contour radius guard") {
    KernelParams bad = p;
    bad.b = 1.0; // radius is 0.1 b, always admissible; q must be >= 1
    CHECK_THROWS_AS(kernel::landau_projection_kernel(bad, 0, {1.0, 0.0}, {0.0, 0.0}), error);
  }
}
