#include "robinflow/disc.hpp"

#include <cmath>
#include <quadmath.h>

#include "robinflow/errors.hpp"
#include "robinflow/kernel.hpp"
#include "robinflow/quadrature.hpp"
#include "robinflow/specfun.hpp"

namespace robinflow::disc {

namespace {

template <class S> S s_sin(S x) { return std::sin(x); }
template <class S> S s_cos(S x) { return std::cos(x); }
template <class S> S s_abs(S x) { return std::fabs(x); }
template <> __float128 s_sin(__float128 x) { return sinq(x); }
template <> __float128 s_cos(__float128 x) { return cosq(x); }
template <> __float128 s_abs(__float128 x) { return fabsq(x); }

template <class S> struct State {
  S theta, logrho, mass; // mass = int_r^R w^2 r dr / rho(r)^2
};

template <class S>
State<S> rhs(int n, double b, double lambda, S r, const State<S>& y) {
  const S sn = s_sin(y.theta), cs = s_cos(y.theta);
  const S V = (S(n) / r - S(b) * r / S(2)) * (S(n) / r - S(b) * r / S(2));
  const S lamV = S(lambda) - V;
  State<S> d;
  d.theta = cs * cs + sn * cs / r + lamV * sn * sn;
  d.logrho = sn * cs * (S(1) - lamV) - cs * cs / r;
  d.mass = -r * sn * sn - S(2) * d.logrho * y.mass;
  return d;
}

// Cash-Karp embedded RK45, integrating inward (r decreasing).
template <class S>
State<S> integrate_inward(int n, double b, double lambda, double r_from, double r_to,
                          const State<S>& y0, double rtol,
                          std::vector<std::array<double, 3>>* samples) {
  static const double A[6] = {0, 1.0 / 5, 3.0 / 10, 3.0 / 5, 1.0, 7.0 / 8};
  static const double B[6][5] = {
      {0, 0, 0, 0, 0},
      {1.0 / 5, 0, 0, 0, 0},
      {3.0 / 40, 9.0 / 40, 0, 0, 0},
      {3.0 / 10, -9.0 / 10, 6.0 / 5, 0, 0},
      {-11.0 / 54, 5.0 / 2, -70.0 / 27, 35.0 / 27, 0},
      {1631.0 / 55296, 175.0 / 512, 575.0 / 13824, 44275.0 / 110592, 253.0 / 4096}};
  static const double C5[6] = {37.0 / 378, 0, 250.0 / 621, 125.0 / 594, 0, 512.0 / 1771};
  static const double C4[6] = {2825.0 / 27648, 0,           18575.0 / 48384,
                               13525.0 / 55296, 277.0 / 14336, 1.0 / 4};

  S r = S(r_from);
  State<S> y = y0;
  S h = S(-(r_from - r_to) / 200.0);
  const S r_end = S(r_to);
  const double hmin = 1e-13 * (r_from - r_to);
  long steps = 0;

  auto record = [&] {
    if (samples)
      samples->push_back({double(r), double(y.theta), double(y.logrho)});
  };
  record();

  while (double(r) > r_to) {
    if (double(r) + double(h) < r_to) h = r_end - r;
    State<S> k[6];
    for (int stage = 0; stage < 6; ++stage) {
      State<S> yi = y;
      for (int j = 0; j < stage; ++j) {
        yi.theta += h * S(B[stage][j]) * k[j].theta;
        yi.logrho += h * S(B[stage][j]) * k[j].logrho;
        yi.mass += h * S(B[stage][j]) * k[j].mass;
      }
      k[stage] = rhs<S>(n, b, lambda, r + S(A[stage]) * h, yi);
    }
    State<S> y5 = y, y4 = y;
    for (int j = 0; j < 6; ++j) {
      y5.theta += h * S(C5[j]) * k[j].theta;
      y5.logrho += h * S(C5[j]) * k[j].logrho;
      y5.mass += h * S(C5[j]) * k[j].mass;
      y4.theta += h * S(C4[j]) * k[j].theta;
      y4.logrho += h * S(C4[j]) * k[j].logrho;
      y4.mass += h * S(C4[j]) * k[j].mass;
    }
    const double scale_t = 1.0 + std::fabs(double(y.theta));
    const double scale_l = 1.0 + std::fabs(double(y.logrho));
    const double scale_m = 1.0 + std::fabs(double(y.mass));
    double err = std::fabs(double(y5.theta - y4.theta)) / scale_t;
    err = std::max(err, std::fabs(double(y5.logrho - y4.logrho)) / scale_l);
    err = std::max(err, std::fabs(double(y5.mass - y4.mass)) / scale_m);
    err = std::max(err, 1e-300);
    if (err <= rtol) {
      r += h;
      y = y5;
      record();
    }
    double fac = 0.9 * std::pow(rtol / err, 0.2);
    fac = std::min(4.0, std::max(0.1, fac));
    h = h * S(fac);
    if (s_abs(h) < S(hmin)) fail(errc::stiff, "solve_radial: step size underflow");
    if (++steps > 4000000) fail(errc::stiff, "solve_radial: step budget exhausted");
  }
  return y;
}

double pick_r_max(int n, double b, double lambda) {
  // beyond the well and deep enough that b r^2/4 - |kappa| log(b r^2/2) >= 40
  const double kappa = 0.5 * (n + lambda / b);
  double R = std::sqrt(160.0 / b);
  const double r0 = n > 0 ? std::sqrt(2.0 * n / b) : 1.0;
  R = std::max(R, 1.6 * r0);
  for (int i = 0; i < 60; ++i) {
    const double z = b * R * R / 2.0;
    if (z / 2.0 - std::fabs(kappa) * std::log(z) - std::fabs(lambda) / b >= 40.0) break;
    R *= 1.25;
  }
  return R;
}

// log of the amplitude ratio between the two WKB branches across the
// classically forbidden part of (r_eval, r0); controls how much inward
// integration noise can grow.
double barrier_log_growth(int n, double b, double lambda, double r_eval) {
  if (n < 1) return 0.0;
  const double r0 = std::sqrt(2.0 * n / b);
  if (r0 <= r_eval) return 0.0;
  auto f = [&](double r) {
    const double V = (n / r - b * r / 2.0) * (n / r - b * r / 2.0);
    return V > lambda ? std::sqrt(V - lambda) : 0.0;
  };
  return 2.0 * integrate<double>(f, r_eval, r0, 1e-10, 1e-8, 30);
}

struct Readout {
  double theta, sin_t, cos_t, mass;
  double r_max;
};

template <class S>
Readout run_once(int n, double b, double lambda, double R, double r_eval, double rtol,
                 std::vector<std::array<double, 3>>* samples) {
  const double nu = lambda / b;
  const double u0 = -b * R / 2.0 + (n + nu - 1.0) / R;
  State<S> y;
  y.theta = S(std::atan2(1.0, u0));
  y.logrho = S(0);
  const double sin0 = std::sin(std::atan2(1.0, u0));
  y.mass = S(sin0 * sin0 * R / (2.0 * std::fabs(u0)));
  const State<S> yf = integrate_inward<S>(n, b, lambda, R, r_eval, y, rtol, samples);
  Readout out;
  out.theta = double(yf.theta);
  out.sin_t = double(s_sin(yf.theta));
  out.cos_t = double(s_cos(yf.theta));
  out.mass = double(yf.mass);
  out.r_max = R;
  return out;
}

Readout run_adaptive(int n, double b, double lambda, double r_eval,
                     std::vector<std::array<double, 3>>* samples) {
  const double amp_log = barrier_log_growth(n, b, lambda, r_eval);
  // escalate when lambda sits close to the Landau spectrum: there the true
  // solution is the branch that inward integration damps
  const bool near_landau = kernel::landau_distance(lambda, b, 1) <= 0.05 * b;
  int level = 0;
  if (near_landau && n >= 1) {
    const double noise_d = amp_log + std::log(1e-15);
    const double noise_ld = amp_log + std::log(4e-19);
    if (noise_d > std::log(1e-11)) level = 1;
    if (noise_ld > std::log(1e-11)) level = 2;
  }
  double R = pick_r_max(n, b, lambda);
  auto run = [&](double Rv, std::vector<std::array<double, 3>>* smp) {
    switch (level) {
      case 1: return run_once<long double>(n, b, lambda, Rv, r_eval, 1e-13, smp);
      case 2: return run_once<__float128>(n, b, lambda, Rv, r_eval, 1e-16, smp);
      default: return run_once<double>(n, b, lambda, Rv, r_eval, 1e-11, smp);
    }
  };
  Readout a = run(R, samples);
  for (int round = 0; round < 3; ++round) {
    const Readout c = run(R * 1.3, nullptr);
    const double diff = std::fabs(std::atan2(a.sin_t, a.cos_t) - std::atan2(c.sin_t, c.cos_t));
    if (diff <= 1e-10) break;
    R *= 1.3;
    a = c;
    if (samples) {
      samples->clear();
      a = run(R, samples);
    }
  }
  return a;
}

} // namespace

RadialSolution solve_radial(int n, double b, double lambda, double r_eval, bool want_grid) {
  if (b <= 0) fail(errc::validation, "solve_radial: b must be positive");
  if (r_eval < 1.0) fail(errc::validation, "solve_radial: r_eval < 1");
  std::vector<std::array<double, 3>> samples;
  const Readout ro = run_adaptive(n, b, lambda, r_eval, want_grid ? &samples : nullptr);
  RadialSolution sol;
  sol.prufer_angle = ro.theta;
  sol.r_max_used = ro.r_max;
  sol.pole_flag = std::fabs(ro.sin_t) < 1e-9;
  sol.log_deriv = ro.cos_t / ro.sin_t;
  sol.boundary_weight = ro.sin_t * ro.sin_t / ro.mass;
  if (want_grid) sol.grid_values = std::move(samples);
  return sol;
}

double closed_form_landau_mode(int q, int n, double b, double r) {
  if (q < 1) fail(errc::validation, "closed_form_landau_mode: q >= 1 required");
  const double fac = std::exp(std::lgamma(q)) * ((q % 2) ? 1.0 : -1.0);
  return fac * std::pow(b / 2.0, (n + 1) / 2.0) * std::pow(r, n) * std::exp(-b * r * r / 4.0) *
         specfun::laguerre(q - 1, n, b * r * r / 2.0);
}

double closed_form_landau_log_deriv(int q, int n, double b, double r) {
  const double x = b * r * r / 2.0;
  const double L = specfun::laguerre(q - 1, n, x);
  const double Lp = q >= 2 ? -specfun::laguerre(q - 2, n + 1, x) : 0.0;
  return n / r - b * r / 2.0 + b * r * Lp / L;
}

double secular(const ModeProblem& mp, double lambda) {
  const RadialSolution sol = solve_radial(mp.n, mp.b, lambda);
  if (sol.pole_flag) fail(errc::dirichlet, "secular: lambda is a mode-Dirichlet eigenvalue");
  return sol.log_deriv - mp.robin;
}

double dtr_ratio(int n, double b, double mu) {
  const RadialSolution sol = solve_radial(n, b, mu);
  if (sol.pole_flag) fail(errc::dirichlet, "dtr_ratio: mu is a mode-Dirichlet eigenvalue");
  return sol.log_deriv;
}

double feynman_hellmann(const ModeProblem& mp, double lambda_eigen) {
  const RadialSolution sol = solve_radial(mp.n, mp.b, lambda_eigen);
  if (sol.pole_flag) fail(errc::dirichlet, "feynman_hellmann: Dirichlet point");
  const double scale = 1.0 + std::fabs(sol.log_deriv) + std::fabs(mp.robin);
  if (std::fabs(sol.log_deriv - mp.robin) > 1e-8 * scale)
    fail(errc::not_eigen, "feynman_hellmann: lambda is not an eigenvalue of the mode problem");
  return sol.boundary_weight;
}

namespace {

void check_window(double b, const SpectrumWindow& w) {
  if (!(w.lo < w.hi)) fail(errc::validation, "window: lo < hi required");
  for (int q = 1;; ++q) {
    const double lev = kernel::landau_level(q, b, 1);
    if (lev > w.hi + 1e-3 * b) break;
    if (lev > w.lo - 1e-3 * b && lev < w.hi + 1e-3 * b)
      fail(errc::window, "window touches a Landau level");
  }
}

double prufer_angle_at_1(int n, double b, double lambda) {
  return solve_radial(n, b, lambda).prufer_angle;
}

// roots of theta_1(lambda) = target + k*pi inside [lo, hi]; theta_1 decreasing
std::vector<double> angle_roots(int n, double b, double lo, double hi, double target) {
  const double th_lo = prufer_angle_at_1(n, b, lo);
  const double th_hi = prufer_angle_at_1(n, b, hi);
  std::vector<double> roots;
  const int k_max = (int)std::floor((th_lo - target) / M_PI);
  const int k_min = (int)std::ceil((th_hi - target) / M_PI);
  for (int k = k_max; k >= k_min; --k) {
    const double level = target + k * M_PI;
    if (level > th_lo || level < th_hi) continue;
    double a = lo, fa = th_lo - level;
    double c = hi, fc = th_hi - level;
    if (fa == 0) { roots.push_back(a); continue; }
    if (fc == 0) { roots.push_back(c); continue; }
    for (int it = 0; it < 48 && (c - a) > 1e-13 * (1.0 + std::fabs(a)); ++it) {
      const double mid = 0.5 * (a + c);
      const double fm = prufer_angle_at_1(n, b, mid) - level;
      if ((fa > 0) == (fm > 0)) {
        a = mid;
        fa = fm;
      } else {
        c = mid;
        fc = fm;
      }
    }
    // secant polish
    double x0 = a, f0 = fa, x1 = c, f1 = fc;
    for (int it = 0; it < 4 && std::fabs(f1 - f0) > 0; ++it) {
      const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
      if (!(x2 > lo && x2 < hi)) break;
      x0 = x1;
      f0 = f1;
      x1 = x2;
      f1 = prufer_angle_at_1(n, b, x1) - level;
    }
    roots.push_back(std::fabs(f1) < std::fabs(f0) ? x1 : x0);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

} // namespace

std::vector<double> mode_eigenvalues(const ModeProblem& mp, const SpectrumWindow& w) {
  check_window(mp.b, w);
  const double target = std::atan2(1.0, mp.robin); // in (0, pi)
  return angle_roots(mp.n, mp.b, w.lo, w.hi, target);
}

std::vector<double> dirichlet_mode_spectrum(int n, double b, const SpectrumWindow& w) {
  check_window(b, w);
  return angle_roots(n, b, w.lo, w.hi, M_PI);
}

double landau_secular_value(int q, int n, double b, double tau_n, int variant) {
  const double L = specfun::laguerre(q - 1, n, b / 2.0);
  const double Lup = q >= 2 ? specfun::laguerre(q - 2, n + 1, b / 2.0) : 0.0;
  return (2.0 * n - b - 2.0 * tau_n) * L + 2.0 * b * variant * Lup;
}

double landau_T(int q, int n, double b) {
  const double L = specfun::laguerre(q - 1, n, b / 2.0);
  const double Lup = q >= 2 ? specfun::laguerre(q - 2, n + 1, b / 2.0) : 0.0;
  const double ell = (L == 0.0) ? 0.0 : Lup / L;
  return n - b / 2.0 - b * ell;
}

} // namespace robinflow::disc
