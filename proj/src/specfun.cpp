#include "robinflow/specfun.hpp"

#include <cmath>

#include "robinflow/errors.hpp"
#include "robinflow/quadrature.hpp"

namespace robinflow::specfun {

double binomial_general(double x, int j) {
  if (j < 0) fail(errc::domain, "binomial_general: j < 0");
  double v = 1.0;
  for (int i = 0; i < j; ++i) v *= (x - i) / (i + 1);
  return v;
}

double laguerre(int k, double alpha, double x) {
  if (k < 0) fail(errc::domain, "laguerre: negative degree");
  if (k == 0) return 1.0;
  double lm = 1.0;
  double l = 1.0 + alpha - x;
  for (int j = 1; j < k; ++j) {
    const double ln = ((2.0 * j + 1.0 + alpha - x) * l - (j + alpha) * lm) / (j + 1.0);
    lm = l;
    l = ln;
  }
  return l;
}

double g_upper(int n, double v) {
  if (v < 0) fail(errc::domain, "g_upper: v < 0");
  if (n >= 0) {
    // g_n(v) = n! e^{-v} sum_{k=0}^{n} v^k/k!  (all terms positive)
    double fact = 1.0;
    for (int k = 2; k <= n; ++k) fact *= k;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= n; ++k) {
      term *= v / k;
      sum += term;
    }
    return fact * std::exp(-v) * sum;
  }
  if (v == 0.0) fail(errc::domain, "g_upper: integrand singular at 0 for n < 0");
  // direct quadrature; integrand positive, exponential tail
  return integrate_to_inf<double>(
      [n](double z) { return std::exp(-z + n * std::log(z)); }, v, 1e-300, 1e-13);
}

} // namespace robinflow::specfun
