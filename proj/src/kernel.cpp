#include "robinflow/kernel.hpp"

#include <cmath>

#include "robinflow/errors.hpp"
#include "robinflow/quadrature.hpp"

namespace robinflow::kernel {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209;

cplx cpow(double base, cplx p) {
  if (base <= 0) fail(errc::domain, "cpow: nonpositive base");
  return std::exp(p * std::log(base));
}

// falling factorial x(x-1)...(x-k+1) for complex x
cplx falling(cplx x, int k) {
  cplx v = 1.0;
  for (int i = 0; i < k; ++i) v *= (x - double(i));
  return v;
}

cplx binom_c(cplx x, int j) {
  cplx v = 1.0;
  for (int i = 0; i < j; ++i) v *= (x - double(i)) / double(i + 1);
  return v;
}

double fact(int n) { return std::exp(std::lgamma(n + 1.0)); }

// j-th derivative of f(z) = e^{-s z} (z+2)^beta (z+1)^m at z.
cplx f_deriv(int j, double z, double s, cplx beta, int m) {
  cplx total = 0.0;
  for (int i1 = 0; i1 <= j; ++i1) {
    for (int i3 = 0; i3 <= std::min(j - i1, m); ++i3) {
      const int i2 = j - i1 - i3;
      const double multi = fact(j) / (fact(i1) * fact(i2) * fact(i3));
      cplx term = multi * std::pow(-s, i1) * std::exp(-s * z);
      term *= falling(beta, i2) * cpow(z + 2.0, beta - double(i2));
      term *= falling(cplx(m, 0), i3) * std::pow(z + 1.0, m - i3);
      total += term;
    }
  }
  return total;
}

} // namespace

double split_point() { return std::atanh(0.25); }

double landau_level(int q, double b, int d) { return 2.0 * b * (q - 1) + b * d; }

double landau_distance(double mu, double b, int d) {
  double best = std::fabs(mu - landau_level(1, b, d));
  for (int q = 2;; ++q) {
    const double lev = landau_level(q, b, d);
    const double dist = std::fabs(mu - lev);
    if (dist < best) best = dist;
    if (lev > mu + 2 * b) break;
  }
  return best;
}

cplx eval_I_inf(int d, cplx nu, double s, int coth_power) {
  if (s < 0) fail(errc::domain, "eval_I_inf: s < 0");
  // pole guard: nu in 2N + d
  if (std::fabs(nu.imag()) < 1e-12) {
    const double re = nu.real();
    if (re >= d - 1e-12) {
      const double k = std::round((re - d) / 2.0);
      if (k >= 0 && std::fabs(re - (d + 2.0 * k)) < 1e-12)
        fail(errc::pole, "eval_I_inf: nu at a pole of the continuation");
    }
  }
  const cplx alpha = (double(d) - 2.0 - nu) / 2.0;
  const cplx beta = (double(d) - 2.0 + nu) / 2.0;
  const int m = coth_power;

  // lifts so that the remaining endpoint exponent has real part >= 1/2
  const int lifts = std::max(0, (int)std::ceil(0.5 - alpha.real()));

  cplx sum = 0.0;
  cplx denom = 1.0;
  for (int k = 0; k < lifts; ++k) {
    denom *= (alpha + 1.0 + double(k));
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    sum += sgn * f_deriv(k, 3.0, s, beta, m) * cpow(3.0, alpha + 1.0 + double(k)) / denom;
  }
  const cplx alpha_l = alpha + double(lifts);
  // substitution z = u^p keeps the integrand regular at 0
  const int p = alpha_l.real() >= 3.0 ? 1 : 4;
  const double upper = std::pow(3.0, 1.0 / p);
  auto integrand = [&](double u) -> cplx {
    const double z = std::pow(u, p);
    if (z <= 0) return 0.0;
    return f_deriv(lifts, z, s, beta, m) * cpow(z, alpha_l) * double(p) * std::pow(u, p - 1);
  };
  cplx rem = integrate<cplx>(integrand, 0.0, upper, 1e-13, 1e-11);
  const double sgn = (lifts % 2 == 0) ? 1.0 : -1.0;
  sum += sgn * rem / denom;
  return std::exp(-s) * sum;
}

cplx eval_I_0(int d, cplx nu, double s, int coth_power) {
  if (s <= 0) fail(errc::domain, "eval_I_0: s <= 0");
  const cplx half_nu = nu / 2.0;
  const double ed = (d - 2.0) / 2.0;
  const int m = coth_power;
  auto f = [&](double z) -> cplx {
    return std::exp(-s * z) * std::pow(z * z - 1.0, ed) * cpow(1.0 + 2.0 / (z - 1.0), half_nu) *
           std::pow(z, m);
  };
  return integrate_to_inf<cplx>(f, 4.0, 1e-14, 1e-11);
}

cplx eval_I(int d, cplx nu, double s) { return eval_I_0(d, nu, s) + eval_I_inf(d, nu, s); }

cplx eval_I_ds(int d, cplx nu, double s) {
  return -(eval_I_0(d, nu, s, 1) + eval_I_inf(d, nu, s, 1));
}

cplx ExpansionTable::eval(double s) const {
  cplx v = 0.0;
  const double ls = std::log(s);
  for (const auto& [j, c] : power_coeffs) v += c * std::pow(s, j);
  for (const auto& [j, c] : log_coeffs) v += c * std::pow(s, j) * ls;
  return v;
}

ExpansionTable small_s_expansion(int d, cplx nu, int order) {
  if (order > 8) fail(errc::order, "small_s_expansion: order > 8");
  if (order < 0) fail(errc::order, "small_s_expansion: negative order");
  if (d < 1) fail(errc::domain, "small_s_expansion: d < 1");

  ExpansionTable tab;
  tab.d = d;
  tab.truncation_order = order;

  auto& c = tab.power_coeffs;
  auto& dl = tab.log_coeffs;
  const double L4 = std::log(4.0);
  const double tol = 1e-19;
  const double bd2 = (d - 2.0) / 2.0;

  for (int k = 0; k < 400; ++k) {
    const double Bk = [&] {
      double v = 1.0;
      for (int i = 0; i < k; ++i) v *= (bd2 - i) / (i + 1);
      return v * ((k % 2) ? -1.0 : 1.0);
    }();
    if (Bk == 0.0) break;
    if (std::fabs(Bk) * std::pow(4.0, -2.0 * k + d) < tol && k > d + 2) break;
    for (int l = 0; l < 400; ++l) {
      const cplx Bl = binom_c(nu / 2.0, l) * std::pow(2.0, l);
      if (Bl == cplx(0.0)) break;
      if (std::abs(Bk * Bl) * std::pow(4.0, -2.0 * k + d) * std::pow(2.0 / 3.0, l) * 3.0 < tol &&
          l > 4)
        break;
      for (int mm = 0; mm < 400; ++mm) {
        const double Bm = [&] {
          double v = 1.0;
          for (int i = 0; i < mm; ++i) v *= (double(-l) - i) / (i + 1);
          return v * ((mm % 2) ? -1.0 : 1.0);
        }();
        if (Bm == 0.0 && mm > 0) break;
        const cplx T = Bk * Bl * Bm;
        const int P = 2 * k + l + mm + 1 - d;
        if (std::abs(T) * (std::pow(4.0, -double(P)) + 1.0 / std::max(P, 1)) < tol && P > order &&
            mm > 2)
          break;
        const int Q = -1 - P;
        if (Q >= 0) {
          // g_Q entire: g_Q(v) = Q! - sum_i (-1)^i v^{Q+1+i} / (i! (Q+1+i))
          c[P] += T * fact(Q);
          for (int i = 0; i <= order; ++i)
            c[i] -= T * ((i % 2) ? -1.0 : 1.0) * std::pow(4.0, Q + 1 + i) / (fact(i) * (Q + 1 + i));
        } else {
          const int mp = -Q; // g_{-mp}, mp = P+1 >= 1
          if (mp <= 170) {
            const cplx pref = T * ((mp % 2) ? 1.0 : -1.0) * std::exp(-std::lgamma(double(mp)));
            dl[P] -= pref;
            c[P] += pref * (-kEulerGamma - L4);
            for (int i = 1; i <= order - P; ++i)
              c[P + i] += pref * ((i % 2) ? 1.0 : -1.0) * std::pow(4.0, i) / (i * fact(i));
          }
          for (int jj = 0; jj <= mp - 2; ++jj) {
            const double lmag = std::lgamma(jj + 1.0) - std::lgamma(double(mp));
            if (lmag < -720) continue;
            const double sgn = ((mp - 1 + jj) % 2) ? -1.0 : 1.0;
            const cplx coef = -T * sgn * std::exp(lmag);
            for (int i = 0;; ++i) {
              const int pw = P + i - jj - 1;
              if (pw > order) break;
              c[pw] += coef * ((i % 2) ? -1.0 : 1.0) * std::pow(4.0, i - jj - 1) / fact(i);
            }
          }
        }
      }
    }
  }

  // prune beyond the requested order and record the leading term
  for (auto it = c.begin(); it != c.end();)
    it = (it->first > order) ? c.erase(it) : std::next(it);
  for (auto it = dl.begin(); it != dl.end();)
    it = (it->first > order) ? dl.erase(it) : std::next(it);

  if (d == 1) {
    tab.leading_is_log = true;
    tab.leading_power = 0;
    tab.leading_coeff = dl.count(0) ? dl[0] : cplx(0.0);
  } else {
    tab.leading_is_log = false;
    tab.leading_power = 1 - d;
    tab.leading_coeff = c.count(1 - d) ? c[1 - d] : cplx(0.0);
  }
  return tab;
}

namespace {

void check_points(const KernelParams& p, const std::vector<double>& x,
                  const std::vector<double>& y) {
  if ((int)x.size() != 2 * p.d || (int)y.size() != 2 * p.d)
    fail(errc::validation, "eval_E: points must lie in R^{2d}");
  if (p.b <= 0) fail(errc::validation, "eval_E: b must be positive");
}

double im_pairing(const std::vector<double>& x, const std::vector<double>& y) {
  // Im(conj(x) . y) under R^{2d} ~ C^d
  double v = 0;
  for (size_t j = 0; j + 1 < x.size(); j += 2) v += x[j] * y[j + 1] - x[j + 1] * y[j];
  return v;
}

} // namespace

cplx eval_E(const KernelParams& p, const std::vector<double>& x, const std::vector<double>& y) {
  check_points(p, x, y);
  double dist2 = 0;
  for (size_t j = 0; j < x.size(); ++j) dist2 += (x[j] - y[j]) * (x[j] - y[j]);
  if (std::sqrt(dist2) < 1e-12) fail(errc::diagonal, "eval_E: x too close to y");
  const double pref = 2.0 * std::pow(p.b, p.d - 1) / std::pow(4.0 * M_PI, p.d);
  const cplx phase = std::exp(cplx(0, 0.5 * p.b * im_pairing(x, y)));
  const double s = p.b * dist2 / 4.0;
  const cplx nu = p.mu / p.b;
  return pref * phase * (eval_I_0(p.d, nu, s) + eval_I_inf(p.d, nu, s));
}

cplx landau_projection_kernel(const KernelParams& p, int q, const std::vector<double>& x,
                              const std::vector<double>& y) {
  check_points(p, x, y);
  if (q < 1) fail(errc::validation, "landau_projection_kernel: q >= 1 required");
  const double radius = 0.1 * p.b;
  if (radius >= p.b) fail(errc::contour, "landau_projection_kernel: contour encloses two poles");
  const double center = landau_level(q, p.b, p.d);

  // I_0 is entire in mu, so only the I_inf part contributes to the residue;
  // integrating it alone also keeps the diagonal x = y admissible.
  double dist2 = 0;
  for (size_t j = 0; j < x.size(); ++j) dist2 += (x[j] - y[j]) * (x[j] - y[j]);
  const double s = p.b * dist2 / 4.0;
  const double pref = 2.0 * std::pow(p.b, p.d - 1) / std::pow(4.0 * M_PI, p.d);
  const cplx phase = std::exp(cplx(0, 0.5 * p.b * im_pairing(x, y)));

  auto contour = [&](int nodes) -> cplx {
    cplx acc = 0;
    for (int k = 0; k < nodes; ++k) {
      const double th = 2.0 * M_PI * k / nodes;
      const cplx w = std::polar(1.0, th);
      const cplx mu_k = center + radius * w;
      acc += eval_I_inf(p.d, mu_k / p.b, s) * w;
    }
    return pref * phase * acc * (radius / double(nodes));
  };

  cplx prev = contour(64);
  for (int nodes = 128; nodes <= 1024; nodes *= 2) {
    const cplx cur = contour(nodes);
    if (std::abs(cur - prev) <= 1e-9 * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

} // namespace robinflow::kernel
