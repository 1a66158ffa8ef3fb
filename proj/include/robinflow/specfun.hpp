#ifndef ROBINFLOW_SPECFUN_HPP
#define ROBINFLOW_SPECFUN_HPP

namespace robinflow::specfun {

struct PolyParam {
  int degree = 0;   // >= 0
  double alpha = 0; // superscript parameter
};

// Generalized binomial coefficient x(x-1)...(x-j+1)/j!, j >= 0.
double binomial_general(double x, int j);

// Generalized Laguerre polynomial L^alpha_k(x), upward three-term recurrence.
double laguerre(int k, double alpha, double x);

// Upper incomplete-gamma integral g_n(v) = int_v^inf e^{-z} z^n dz.
// n may be negative, in which case v > 0 is required.
double g_upper(int n, double v);

} // namespace robinflow::specfun

#endif
