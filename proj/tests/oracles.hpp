#ifndef ROBINFLOW_TEST_ORACLES_HPP
#define ROBINFLOW_TEST_ORACLES_HPP

#include <complex>
#include <functional>
#include <cstdint>
#include <vector>

// Independent reference computations used only by tests. None of these share
// code with the implementation paths they check.
namespace oracles {

// Split integrals in the original t variable (valid for Re nu < d):
//   int e^{-s coth t + nu t} / sinh^d t dt over (0, h) or (h, inf).
double I0_t_form(int d, double nu, double s);
double Iinf_t_form(int d, double nu, double s);

// Laguerre polynomial by the explicit sum in exact rational arithmetic
// (integer alpha, rational x = xn/xd). Returns num/den through doubles.
double laguerre_rational_sum(int k, int alpha, long long xn, long long xd);

// Dense finite-difference oracle for the radial mode operator on (1, R):
// variational tridiagonal assembly, Robin row at r = 1, Dirichlet at R,
// eigenvalues located by Sturm-sequence bisection and Richardson
// extrapolation over grids N and 2N.
std::vector<double> fd_mode_eigenvalues(int n, double b, double tau, double lambda_lo,
                                        double lambda_hi, double R, int N);
std::vector<double> fd_mode_eigenvalues_richardson(int n, double b, double tau, double lambda_lo,
                                                   double lambda_hi, double R, int N);

// Lowest-Landau-level projector by truncated basis summation; the magnetic
// convention here pairs with the fundamental solution's phase orientation.
std::complex<double> lll_kernel_sum(double b, const std::vector<double>& x,
                                    const std::vector<double>& y, int terms = 80);

// Magnetic Schrodinger expression (-(grad + i b A0)^2 - mu) applied to a
// function of x by second-order centered differences.
std::complex<double> magnetic_fd_residual(
    double b, double mu,
    const std::function<std::complex<double>(const std::vector<double>&)>& u,
    const std::vector<double>& x, double h);

// xorshift-based deterministic RNG for property tests
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (double)(next() >> 11) / 9007199254740992.0;
  }
};

} // namespace oracles

#endif
