#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace oracles {

namespace {

// plain adaptive Simpson, independent of the library quadrature
double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double simpson(const std::function<double(double)>& f, double a, double b, double tol,
               int depth = 50) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

} // namespace

double I0_t_form(int d, double nu, double s) {
  const double h = std::atanh(0.25);
  auto f = [&](double t) {
    if (t <= 0) return 0.0;
    const double ct = std::cosh(t) / std::sinh(t);
    return std::exp(-s * ct + nu * t - d * std::log(std::sinh(t)));
  };
  // integrand vanishes superexponentially at t -> 0 for s > 0
  return simpson(f, 1e-9, h, 1e-14);
}

double Iinf_t_form(int d, double nu, double s) {
  const double h = std::atanh(0.25);
  auto f = [&](double t) {
    const double ct = std::cosh(t) / std::sinh(t);
    return std::exp(-s * ct + nu * t - d * std::log(std::sinh(t)));
  };
  // e^{(nu - d) t} tail; cut where it is below 1e-18
  const double T = std::max(60.0, 45.0 / std::max(0.05, double(d) - nu));
  return simpson(f, h, T, 1e-14);
}

double laguerre_rational_sum(int k, int alpha, long long xn, long long xd) {
  // L^alpha_k(x) = sum_{i=0}^{k} binom(k+alpha, k-i) (-x)^i / i!
  // accumulated as an exact fraction with __int128 intermediates
  __int128 num = 0, den = 1;
  for (int i = 0; i <= k; ++i) {
    // binom(k+alpha, k-i) is an integer for integer alpha
    __int128 bn = 1, bd = 1;
    for (int j = 0; j < k - i; ++j) {
      bn *= (k + alpha - j);
      bd *= (j + 1);
    }
    __int128 tn = bn, td = bd;
    for (int j = 1; j <= i; ++j) {
      tn *= -xn;
      td *= xd * j;
    }
    // num/den += tn/td
    num = num * td + tn * den;
    den *= td;
    // reduce
    __int128 a = num < 0 ? -num : num, g = den;
    while (g) {
      __int128 r = a % g;
      a = g;
      g = r;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
  }
  return (double)num / (double)den;
}

namespace {

struct Tridiag {
  std::vector<double> diag, off; // symmetric form after mass scaling
};

Tridiag assemble(int n, double b, double tau, double R, int N) {
  const double h = (R - 1.0) / N;
  std::vector<double> r(N + 1), mass(N + 1), diag(N + 1, 0.0), off(N, 0.0);
  for (int i = 0; i <= N; ++i) r[i] = 1.0 + h * i;
  for (int i = 0; i <= N; ++i) {
    const double w = (i == 0 || i == N) ? h / 2 : h;
    mass[i] = w * r[i];
    const double V = (n / r[i] - b * r[i] / 2.0) * (n / r[i] - b * r[i] / 2.0);
    diag[i] += V * mass[i];
  }
  for (int i = 0; i < N; ++i) {
    const double rm = 0.5 * (r[i] + r[i + 1]);
    diag[i] += rm / h;
    diag[i + 1] += rm / h;
    off[i] = -rm / h;
  }
  diag[0] += tau * 1.0; // Robin boundary term tau * w(1)^2
  // Dirichlet at R: drop the last node, then scale to the standard problem
  Tridiag t;
  t.diag.resize(N);
  t.off.resize(N - 1);
  for (int i = 0; i < N; ++i) t.diag[i] = diag[i] / mass[i];
  for (int i = 0; i < N - 1; ++i) t.off[i] = off[i] / std::sqrt(mass[i] * mass[i + 1]);
  return t;
}

// number of eigenvalues below x (Sturm sequence / LDL inertia)
int count_below(const Tridiag& t, double x) {
  int count = 0;
  double d = t.diag[0] - x;
  if (d < 0) ++count;
  for (size_t i = 1; i < t.diag.size(); ++i) {
    const double denom = std::fabs(d) < 1e-300 ? 1e-300 : d;
    d = (t.diag[i] - x) - t.off[i - 1] * t.off[i - 1] / denom;
    if (d < 0) ++count;
  }
  return count;
}

std::vector<double> eigs_in(const Tridiag& t, double lo, double hi) {
  const int c_lo = count_below(t, lo), c_hi = count_below(t, hi);
  std::vector<double> out;
  for (int k = c_lo; k < c_hi; ++k) {
    double a = lo, b2 = hi;
    for (int it = 0; it < 100; ++it) {
      const double m = 0.5 * (a + b2);
      if (count_below(t, m) <= k)
        a = m;
      else
        b2 = m;
    }
    out.push_back(0.5 * (a + b2));
  }
  return out;
}

} // namespace

std::vector<double> fd_mode_eigenvalues(int n, double b, double tau, double lambda_lo,
                                        double lambda_hi, double R, int N) {
  return eigs_in(assemble(n, b, tau, R, N), lambda_lo, lambda_hi);
}

std::vector<double> fd_mode_eigenvalues_richardson(int n, double b, double tau, double lambda_lo,
                                                   double lambda_hi, double R, int N) {
  // extrapolate each eigenvalue over grids N and 2N; pad the coarse window so
  // matching eigenvalues are present in both lists
  const double pad = 0.02 * (lambda_hi - lambda_lo) + 1e-3;
  const auto c = fd_mode_eigenvalues(n, b, tau, lambda_lo - pad, lambda_hi + pad, R, N);
  const auto f = fd_mode_eigenvalues(n, b, tau, lambda_lo - pad, lambda_hi + pad, R, 2 * N);
  std::vector<double> out;
  for (double ef : f) {
    double best = 1e300, ec = 0;
    for (double v : c)
      if (std::fabs(v - ef) < best) {
        best = std::fabs(v - ef);
        ec = v;
      }
    const double rich = (4.0 * ef - ec) / 3.0;
    if (rich >= lambda_lo && rich <= lambda_hi) out.push_back(rich);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::complex<double> lll_kernel_sum(double b, const std::vector<double>& x,
                                    const std::vector<double>& y, int terms) {
  // orthonormal ground modes phi_k(z) = c_k conj(z)^k e^{-b|z|^2/4}, paired to
  // the fundamental solution's phase orientation
  const std::complex<double> zx(x[0], x[1]), zy(y[0], y[1]);
  const std::complex<double> w = std::conj(zx) * zy;
  std::complex<double> sum = 0;
  std::complex<double> wk = 1.0;
  double c2 = b / (2.0 * M_PI); // c_k^2 at k = 0
  for (int k = 0; k < terms; ++k) {
    sum += c2 * wk;
    wk *= w;
    c2 *= b / (2.0 * (k + 1.0));
  }
  return sum * std::exp(-b * (std::norm(zx) + std::norm(zy)) / 4.0);
}

std::complex<double> magnetic_fd_residual(
    double b, double mu,
    const std::function<std::complex<double>(const std::vector<double>&)>& u,
    const std::vector<double>& x, double h) {
  // (-(grad + i b A0)^2 - mu) u = (-lap - 2 i b A.grad + b^2|A|^2 - mu) u,
  // with A0 = (-x2, x1)/2 (divergence free), by centered differences
  const int dim = (int)x.size();
  const std::complex<double> u0 = u(x);
  std::complex<double> lap = 0;
  std::vector<std::complex<double>> grad(dim);
  for (int j = 0; j < dim; ++j) {
    std::vector<double> xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const std::complex<double> up = u(xp), um = u(xm);
    lap += (up + um - 2.0 * u0) / (h * h);
    grad[j] = (up - um) / (2.0 * h);
  }
  std::vector<double> A(dim);
  for (int j = 0; j + 1 < dim; j += 2) {
    A[j] = -0.5 * x[j + 1];
    A[j + 1] = 0.5 * x[j];
  }
  std::complex<double> a_grad = 0;
  double a_sq = 0;
  for (int j = 0; j < dim; ++j) {
    a_grad += A[j] * grad[j];
    a_sq += A[j] * A[j];
  }
  return -lap - 2.0 * std::complex<double>(0, b) * a_grad + (b * b * a_sq - mu) * u0;
}

} // namespace oracles
