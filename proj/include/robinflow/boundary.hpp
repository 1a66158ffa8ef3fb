#ifndef ROBINFLOW_BOUNDARY_HPP
#define ROBINFLOW_BOUNDARY_HPP

#include <complex>
#include <utility>
#include <vector>

#include "robinflow/robin_symbol.hpp"

namespace robinflow::boundary {

using cplx = std::complex<double>;

// Jump constant added to the Fourier coefficients of the double-layer kernel
// so that the zero set of b_n + tau_n a_n reproduces the radial secular
// equation; measured once against the ODE route and frozen.
inline constexpr double kDoubleLayerJump = 1.0 / (2.0 * 3.14159265358979323846);

// Fourier modes on the unit circle of the single layer kernel (a_n), the
// symmetrized normal-derivative kernel (p_n) and the corrected double layer
// b_n = p_n + kDoubleLayerJump; mode n pairs with the radial operator H_n.
struct BoundaryModes {
  double mu = 0;
  double b = 1;
  int n_min = 0;
  int n_max = 0;
  enum class Method { kernel_restriction, pv_direct } method = Method::kernel_restriction;
  std::vector<cplx> a, bmode, p;

  const cplx& a_of(int n) const { return a[n - n_min]; }
  const cplx& b_of(int n) const { return bmode[n - n_min]; }
  const cplx& p_of(int n) const { return p[n - n_min]; }
};

// Restriction route: Fourier coefficients of the fundamental solution and its
// normal derivative on the circle, log singularity handled by adaptive
// subdivision over a cached kernel. mu must stay 1e-6 b away from sigma_L.
BoundaryModes boundary_modes_kernel(double mu, double b, int n_min, int n_max);

// Direct principal-value double integral in the original t variable,
// epsilon-regularized at t = 0 with Richardson extrapolation in sqrt(eps).
// Converges only below the first Landau level (mu < b).
std::pair<cplx, cplx> boundary_modes_pv(double mu, double b, int n);

// Mode of the localizing family: gamma_n = 2 pi (p_n + tau_n a_n); the
// eigenvalue characterization reads 1 + gamma_n = 0, and gamma_n -> 0 as
// |n| -> infinity.
cplx gamma_mode(double mu, double b, const RobinSymbol& tau, int n);

} // namespace robinflow::boundary

#endif
