#ifndef ROBINFLOW_KERNEL_HPP
#define ROBINFLOW_KERNEL_HPP

#include <complex>
#include <map>
#include <vector>

namespace robinflow::kernel {

using cplx = std::complex<double>;

struct KernelParams {
  double b = 1.0; // field strength, > 0
  int d = 1;      // half-dimension, space is R^{2d}
  cplx mu{0, 0};  // spectral parameter
};

// The positive number h with coth(h) = 4; splits the t-integral.
double split_point();

// I_inf(nu, s) = int_h^inf coth(t)^m e^{-s coth t + nu t} / sinh^d t dt,
// holomorphically continued in nu across Re nu >= d - 2 by repeated
// integration by parts in the substituted variable. Poles at nu in 2N + d.
// m = 0 is the function itself; m = 1 yields -d/ds of it.
cplx eval_I_inf(int d, cplx nu, double s, int coth_power = 0);

// I_0(nu, s) = int_0^h ... dt, entire in nu, s > 0.
cplx eval_I_0(int d, cplx nu, double s, int coth_power = 0);

// I = I_0 + I_inf and its s-derivative.
cplx eval_I(int d, cplx nu, double s);
cplx eval_I_ds(int d, cplx nu, double s);

// Small-s structure of I_0:
//   d  > 1:  (d-2)! s^{1-d} + sum_j c_j(nu) s^j + sum_j d_j(nu) s^j log s
//   d == 1:  -log(s) + sum_{j>=0} c_j(nu) s^j + sum_{j>=1} d_j(nu) s^j log s
// (the leading log coefficient is stored in log_coeffs[0] = -1 for d = 1).
struct ExpansionTable {
  int d = 1;
  int truncation_order = 0;
  std::map<int, cplx> power_coeffs; // j -> c_j, includes the (d-2)! s^{1-d} head for d > 1
  std::map<int, cplx> log_coeffs;   // j -> d_j multiplying s^j log s
  double leading_power = 0;         // 1-d for d > 1, 0 for d = 1
  cplx leading_coeff{0, 0};         // (d-2)! for d > 1; -1 (on log s) for d = 1
  bool leading_is_log = false;      // true iff d == 1

  cplx eval(double s) const;
};

ExpansionTable small_s_expansion(int d, cplx nu, int order);

// Fundamental solution of L_b - mu on R^{2d}:
//   E(x,y) = 2 b^{d-1} / (4 pi)^d * exp(i Im(b conj(x).y)/2) * I(mu/b, b|x-y|^2/4).
cplx eval_E(const KernelParams& p, const std::vector<double>& x, const std::vector<double>& y);

// Landau-level projection kernel from the residue of E at mu = Lambda_q,
// Lambda_q = 2b(q-1) + bd, computed by trapezoid contour integration.
// The overall constant against the basis-summation kernel is a measured
// convention, not asserted here.
cplx landau_projection_kernel(const KernelParams& p, int q, const std::vector<double>& x,
                              const std::vector<double>& y);

// Landau levels and distance to the Landau spectrum sigma_L = {Lambda_q}.
double landau_level(int q, double b, int d);
double landau_distance(double mu, double b, int d);

} // namespace robinflow::kernel

#endif
