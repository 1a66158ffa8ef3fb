#include "robinflow/boundary.hpp"

#include <cmath>
#include <functional>

#include "robinflow/errors.hpp"
#include "robinflow/kernel.hpp"
#include "robinflow/parallel.hpp"
#include "robinflow/quadrature.hpp"

namespace robinflow::boundary {

namespace {

using kernel::eval_I_0;
using kernel::eval_I_ds;
using kernel::eval_I_inf;

// Chebyshev interpolant on [lo, hi]
struct Cheb {
  double lo = 0, hi = 1;
  std::vector<cplx> coef;

  static Cheb fit(double lo, double hi, int n, const std::function<cplx(double)>& f) {
    Cheb ch;
    ch.lo = lo;
    ch.hi = hi;
    std::vector<cplx> fv(n);
    for (int k = 0; k < n; ++k) {
      const double x = std::cos(M_PI * (k + 0.5) / n);
      fv[k] = f(0.5 * (lo + hi) + 0.5 * (hi - lo) * x);
    }
    ch.coef.resize(n);
    for (int j = 0; j < n; ++j) {
      cplx s = 0;
      for (int k = 0; k < n; ++k) s += fv[k] * std::cos(M_PI * j * (k + 0.5) / n);
      ch.coef[j] = s * (2.0 / n);
    }
    ch.coef[0] *= 0.5;
    return ch;
  }

  cplx eval(double x) const {
    const double t = (2.0 * x - lo - hi) / (hi - lo);
    cplx b1 = 0, b2 = 0;
    for (int j = (int)coef.size() - 1; j >= 1; --j) {
      const cplx b0 = 2.0 * t * b1 - b2 + coef[j];
      b2 = b1;
      b1 = b0;
    }
    return t * b1 - b2 + coef[0];
  }

  double tail() const {
    double m = 0;
    for (size_t j = coef.size() - 3; j < coef.size(); ++j) m = std::max(m, std::abs(coef[j]));
    return m;
  }
};

// Kernel cache at fixed (mu, b): smooth parts of I and s dI/ds over x = log s,
// with the analytic s^j log s structure subtracted and restored exactly.
struct KernelCache {
  double mu, b;
  cplx nu;
  kernel::ExpansionTable tab;
  Cheb smooth_I, smooth_sIs;
  double x_lo, x_hi;

  cplx dlog(double s) const {
    cplx v = 0;
    for (const auto& [j, cj] : tab.log_coeffs) v += cj * std::pow(s, j);
    return v;
  }
  cplx s_dlog_prime(double s) const {
    cplx v = 0;
    for (const auto& [j, cj] : tab.log_coeffs) v += cj * double(j) * std::pow(s, j);
    return v;
  }

  cplx I(double s) const { return smooth_I.eval(std::log(s)) + std::log(s) * dlog(s); }
  cplx sIs(double s) const {
    const double ls = std::log(s);
    return smooth_sIs.eval(ls) + ls * s_dlog_prime(s) + dlog(s);
  }

  static KernelCache make(double mu, double b) {
    KernelCache kc;
    kc.mu = mu;
    kc.b = b;
    kc.nu = cplx(mu / b, 0.0);
    kc.tab = kernel::small_s_expansion(1, kc.nu, 8);
    const double s_max = b * (1.0 - std::cos(M_PI)) / 2.0; // = b
    kc.x_lo = std::log(b * 1e-30);
    kc.x_hi = std::log(s_max * 1.0000001);
    auto fI = [&](double x) -> cplx {
      const double s = std::exp(x);
      return eval_I_0(1, kc.nu, s) + eval_I_inf(1, kc.nu, s) - std::log(s) * kc.dlog(s);
    };
    auto fsIs = [&](double x) -> cplx {
      const double s = std::exp(x);
      const cplx sIs = s * (-(eval_I_0(1, kc.nu, s, 1) + eval_I_inf(1, kc.nu, s, 1)));
      return sIs - std::log(s) * kc.s_dlog_prime(s) - kc.dlog(s);
    };
    int nodes = 96;
    for (;; nodes *= 2) {
      kc.smooth_I = Cheb::fit(kc.x_lo, kc.x_hi, nodes, fI);
      kc.smooth_sIs = Cheb::fit(kc.x_lo, kc.x_hi, nodes, fsIs);
      if ((kc.smooth_I.tail() < 1e-11 && kc.smooth_sIs.tail() < 1e-11) || nodes >= 384) break;
    }
    return kc;
  }
};

double s_of(double b, double theta) { return b * (1.0 - std::cos(theta)) / 2.0; }

cplx kernel_A(const KernelCache& kc, double theta) {
  const double s = s_of(kc.b, theta);
  const cplx phase = std::polar(1.0, 0.5 * kc.b * std::sin(theta));
  return (0.5 / M_PI) * phase * kc.I(s);
}

cplx kernel_P(const KernelCache& kc, double theta) {
  const double s = s_of(kc.b, theta);
  const cplx phase = std::polar(1.0, 0.5 * kc.b * std::sin(theta));
  const cplx inner = cplx(0, 0.5 * kc.b) * std::sin(theta) * kc.I(s) + kc.sIs(s);
  return -(0.5 / M_PI) * phase * inner;
}

cplx fourier_mode(const std::function<cplx(double)>& f, int n) {
  auto g = [&](double th) { return f(th) * std::polar(1.0, -n * th); };
  const double eps = 1e-13;
  return (0.5 / M_PI) * (integrate<cplx>(g, eps, M_PI, 1e-11, 1e-10, 52) +
                         integrate<cplx>(g, M_PI, 2.0 * M_PI - eps, 1e-11, 1e-10, 52));
}

} // namespace

BoundaryModes boundary_modes_kernel(double mu, double b, int n_min, int n_max) {
  if (b <= 0) fail(errc::validation, "boundary_modes_kernel: b must be positive");
  if (n_min > n_max) fail(errc::validation, "boundary_modes_kernel: empty mode range");
  if (kernel::landau_distance(mu, b, 1) < 1e-6 * b)
    fail(errc::landau, "boundary_modes_kernel: mu too close to a Landau level");

  const KernelCache kc = KernelCache::make(mu, b);
  BoundaryModes out;
  out.mu = mu;
  out.b = b;
  out.n_min = n_min;
  out.n_max = n_max;
  out.method = BoundaryModes::Method::kernel_restriction;
  const int count = n_max - n_min + 1;
  out.a.resize(count);
  out.p.resize(count);
  out.bmode.resize(count);
  parallel_for(0, count, [&](int i) {
    const int n = n_min + i;
    out.a[i] = fourier_mode([&](double th) { return kernel_A(kc, th); }, n);
    out.p[i] = fourier_mode([&](double th) { return kernel_P(kc, th); }, n);
    out.bmode[i] = out.p[i] + kDoubleLayerJump;
  });
  return out;
}

namespace {

// inner t-integrals of the principal-value route, cut at t = eps
cplx pv_inner(double nu, double s, double eps, int coth_pow) {
  auto f = [&](double t) -> cplx {
    const double ct = 1.0 / std::tanh(t);
    double w = std::exp(-s * ct + nu * t) / std::sinh(t);
    if (coth_pow) w *= ct;
    return cplx(w, 0);
  };
  return integrate_to_inf<cplx>(f, eps, 1e-13, 1e-11);
}

std::pair<cplx, cplx> pv_modes_at_eps(double mu, double b, int n, double eps) {
  const double nu = mu / b;
  auto a_kernel = [&](double th) -> cplx {
    const double s = s_of(b, th);
    return (0.5 / M_PI) * std::polar(1.0, 0.5 * b * std::sin(th)) * pv_inner(nu, s, eps, 0);
  };
  auto p_kernel = [&](double th) -> cplx {
    const double s = s_of(b, th);
    const cplx phase = std::polar(1.0, 0.5 * b * std::sin(th));
    const cplx inner =
        cplx(0, 0.5 * b) * std::sin(th) * pv_inner(nu, s, eps, 0) - s * pv_inner(nu, s, eps, 1);
    return -(0.5 / M_PI) * phase * inner;
  };
  auto mode = [&](const std::function<cplx(double)>& f) {
    auto g = [&](double th) { return f(th) * std::polar(1.0, -n * th); };
    return (0.5 / M_PI) * integrate<cplx>(g, 0.0, 2.0 * M_PI, 1e-10, 1e-9, 40);
  };
  return {mode(a_kernel), mode(p_kernel)};
}

} // namespace

std::pair<cplx, cplx> boundary_modes_pv(double mu, double b, int n) {
  if (b <= 0) fail(errc::validation, "boundary_modes_pv: b must be positive");
  if (mu >= b) fail(errc::range, "boundary_modes_pv: direct t-integral needs mu < b");
  // Richardson in x = sqrt(eps): leading cut error is O(sqrt(eps))
  const double eps_list[3] = {1e-3, 5e-4, 2.5e-4};
  cplx A[3], P[3];
  double X[3];
  for (int i = 0; i < 3; ++i) {
    auto [ai, pi] = pv_modes_at_eps(mu, b, n, eps_list[i]);
    A[i] = ai;
    P[i] = pi;
    X[i] = std::sqrt(eps_list[i]);
  }
  auto neville = [&](const cplx* F) {
    cplx t[3] = {F[0], F[1], F[2]};
    for (int lvl = 1; lvl < 3; ++lvl)
      for (int i = 0; i < 3 - lvl; ++i)
        t[i] = (t[i + 1] * X[i] - t[i] * X[i + lvl]) / (X[i] - X[i + lvl]);
    return t[0];
  };
  const cplx a = neville(A);
  const cplx p = neville(P);
  return {a, p + kDoubleLayerJump};
}

cplx gamma_mode(double mu, double b, const RobinSymbol& tau, int n) {
  const BoundaryModes m = boundary_modes_kernel(mu, b, n, n);
  return 2.0 * M_PI * (m.p_of(n) + tau(n) * m.a_of(n));
}

} // namespace robinflow::boundary
