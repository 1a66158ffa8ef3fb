#ifndef ROBINFLOW_ROBINFLOW_HPP
#define ROBINFLOW_ROBINFLOW_HPP

#include <functional>
#include <optional>
#include <vector>

#include "robinflow/robin_symbol.hpp"

namespace robinflow::flow {

struct CrossingEvent {
  int mode = 0;
  double t_star = 0;
  int sign = 0;
  int branch = 0; // ordinal of the crossing within its mode
};

struct FlowResult {
  int sf = 0;
  std::vector<CrossingEvent> crossings; // sorted by mode
  int n_max_used = 0;
};

struct FlowQuery {
  double b = 1.0;
  RobinSymbol tau;
  double mu = 0.5;
  double gamma = 0.0; // shift length; gamma < 0 flows toward Neumann data
  int n_max = 0;      // 0 = choose and certify automatically
};

// Spectral flow of the exterior Landau-Robin disc operator along the shift
// path tau + t, t from 0 to gamma. Per mode the crossing parameter is
// t* = rho_n(mu) - tau_n; crossings are counted in (0, gamma] with sign +1
// for gamma > 0 and in [gamma, 0) with sign -1 for gamma < 0.
FlowResult flow_shift(const FlowQuery& q);

// General sampled path t -> tau_n(t) on [0, gamma]; per mode the crossings
// are the roots of tau_n(t) = rho_n(mu), signed by the direction of motion.
FlowResult flow_general(const FlowQuery& q, const std::function<double(double, int)>& tau_of_t);

struct WeylFit {
  double slope = 0;
  double intercept = 0;
  std::vector<double> residuals;
  std::vector<int> counts;        // |sf| on the Dirichlet-ward flow per gamma
  std::vector<int> upward_counts; // sf of the upward shift (saturates)
};

// Least-squares fit of the flow magnitude against gamma. The growing count
// is realized by the downward shift tau - t (equivalently, flows started at
// tau - gamma); the upward direction saturates and is reported alongside.
WeylFit weyl_fit(double b, const RobinSymbol& tau, double mu, const std::vector<double>& gammas);

struct MonotonicityReport {
  int sf = 0;
  bool all_signs_positive = true;
  bool condition_a = false; // eigenvalue certified in [mu0, mu)
  bool condition_b = false; // tau1 - tau0 >= (mu - mu0) c^2 mode-wise
  bool strict_flow_verified = false;
  std::optional<double> witness_eigenvalue;
};

MonotonicityReport monotonicity_report(double b, const RobinSymbol& tau0, const RobinSymbol& tau1,
                                       double mu, double mu0, double c, int n_scan = 8);

} // namespace robinflow::flow

#endif
