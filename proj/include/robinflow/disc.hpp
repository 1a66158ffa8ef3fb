#ifndef ROBINFLOW_DISC_HPP
#define ROBINFLOW_DISC_HPP

#include <array>
#include <optional>
#include <vector>

namespace robinflow::disc {

// Radial mode problem on (1, infinity):
//   H_n(b) w = -w'' - w'/r + (n/r - b r/2)^2 w,   w'(1) = robin * w(1).
struct ModeProblem {
  int n = 0;
  double b = 1.0;
  double robin = 0.0;
};

struct RadialSolution {
  double log_deriv = 0;       // u(r_eval) = w'(r_eval)/w(r_eval); meaningless if pole_flag
  double boundary_weight = 0; // w(r_eval)^2 / int_{r_eval}^inf w^2 r dr
  bool pole_flag = false;     // w(r_eval) = 0, i.e. lambda in the mode-Dirichlet spectrum
  double prufer_angle = 0;    // continuous angle theta(r_eval), strictly decreasing in lambda
  double r_max_used = 0;
  // optional samples (r, theta, log amplitude), outermost first
  std::optional<std::vector<std::array<double, 3>>> grid_values;
};

struct SpectrumWindow {
  double lo = 0;
  double hi = 0;
};

// Decaying solution of H_n(b) w = lambda w, integrated inward from r_max to
// r_eval in the Prufer representation. Escalates internal precision when
// lambda sits near a Landau level inside the classically forbidden region,
// where the decaying branch is exponentially dominated.
RadialSolution solve_radial(int n, double b, double lambda, double r_eval = 1.0,
                            bool want_grid = false);

// w_{Lambda_q,n,b}(r) = (q-1)! (-1)^{q-1} (b/2)^{(n+1)/2} r^n e^{-b r^2/4} L^n_{q-1}(b r^2/2)
double closed_form_landau_mode(int q, int n, double b, double r);
// log-derivative of the closed form in r
double closed_form_landau_log_deriv(int q, int n, double b, double r);

// Normalization-free secular value u(1) - robin; zero exactly at eigenvalues.
double secular(const ModeProblem& mp, double lambda);

// All eigenvalues of the mode problem inside the window, certified by the
// monotone Prufer angle and refined to 1e-10.
std::vector<double> mode_eigenvalues(const ModeProblem& mp, const SpectrumWindow& w);

// Zeros of w(1) (mode-Dirichlet eigenvalues) in the window.
std::vector<double> dirichlet_mode_spectrum(int n, double b, const SpectrumWindow& w);

// Dirichlet-to-Robin ratio rho_n(mu) = w'(1)/w(1) of the decaying solution.
double dtr_ratio(int n, double b, double mu);

// d(lambda)/dt along the shift path robin + t, evaluated at an eigenvalue:
// equals w(1)^2 / ||w||^2 >= 0.
double feynman_hellmann(const ModeProblem& mp, double lambda_eigen);

// Landau-level boundary data. T[n] is the Robin value making Lambda_q an
// eigenvalue of mode n (the Laguerre-derivative sign is fixed against the
// ODE solver; see landau_secular_value for both variants).
struct LandauMultiplicity {
  std::vector<int> modes;             // modes where the secular polynomial vanishes
  std::vector<double> T;              // T_n(q,b) for n in [n_lo, n_hi]
  std::vector<double> secular_values; // the polynomial value at tau_n
  int n_lo = 0;
};

// variant = -1 reproduces the audited sign; +1 the opposite convention.
double landau_secular_value(int q, int n, double b, double tau_n, int variant = -1);
double landau_T(int q, int n, double b);

template <class TauFn>
LandauMultiplicity landau_multiplicity(int q, double b, TauFn&& tau, int n_lo, int n_hi) {
  LandauMultiplicity out;
  out.n_lo = n_lo;
  for (int n = n_lo; n <= n_hi; ++n) {
    const double f = landau_secular_value(q, n, b, tau(n));
    out.T.push_back(landau_T(q, n, b));
    out.secular_values.push_back(f);
    if (std::abs(f) <= 1e-10 * (1.0 + std::abs(n) + b)) out.modes.push_back(n);
  }
  return out;
}

} // namespace robinflow::disc

#endif
