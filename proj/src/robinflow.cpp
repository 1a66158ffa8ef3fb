#include "robinflow/robinflow.hpp"

#include <algorithm>
#include <cmath>

#include "robinflow/disc.hpp"
#include "robinflow/errors.hpp"
#include "robinflow/kernel.hpp"
#include "robinflow/parallel.hpp"

namespace robinflow::flow {

namespace {

struct ModeData {
  double rho = 0;
  bool dirichlet = false;
  bool failed = false;
};

// rho_n(mu) for |n| <= n_max, parallel over modes
std::vector<ModeData> mode_ratios(double b, double mu, int n_max) {
  std::vector<ModeData> data(2 * n_max + 1);
  parallel_for(0, 2 * n_max + 1, [&](int i) {
    const int n = i - n_max;
    try {
      const disc::RadialSolution sol = disc::solve_radial(n, b, mu);
      data[i].rho = sol.log_deriv;
      data[i].dirichlet = sol.pole_flag;
    } catch (const error&) {
      data[i].failed = true;
    }
  });
  for (int i = 0; i <= 2 * n_max; ++i) {
    if (data[i].failed) fail(errc::stiff, "flow: radial solve failed for a mode");
    if (data[i].dirichlet)
      fail(errc::dirichlet, "flow: mu lies in the mode-Dirichlet spectrum");
  }
  return data;
}

void validate_query(const FlowQuery& q) {
  if (q.b <= 0) fail(errc::validation, "flow: b must be positive");
  if (kernel::landau_distance(q.mu, q.b, 1) < 1e-8 * q.b)
    fail(errc::landau, "flow: mu must stay away from the Landau levels");
}

int auto_n_max(const FlowQuery& q) {
  if (q.n_max > 0) return q.n_max;
  double sup_tau = 0;
  const int trial = (int)std::ceil(std::fabs(q.gamma)) + 16;
  for (int n = -trial; n <= trial; ++n) sup_tau = std::max(sup_tau, std::fabs(q.tau(n)));
  return (int)std::ceil(std::fabs(q.gamma) + sup_tau + 10.0);
}

} // namespace

FlowResult flow_shift(const FlowQuery& q) {
  validate_query(q);
  const double gamma = q.gamma;
  FlowResult out;
  if (gamma == 0.0) {
    out.n_max_used = 0;
    return out;
  }

  int n_max = auto_n_max(q);
  for (int attempt = 0; attempt < 12; ++attempt) {
    const std::vector<ModeData> data = mode_ratios(q.b, q.mu, n_max);
    out.crossings.clear();
    out.sf = 0;
    bool shell_hit = false;
    for (int i = 0; i <= 2 * n_max; ++i) {
      const int n = i - n_max;
      const double t_star = data[i].rho - q.tau(n);
      const double tol = 1e-10 * (1.0 + std::fabs(gamma));
      if (std::fabs(t_star) < tol || std::fabs(t_star - gamma) < tol)
        fail(errc::endpoint, "flow_shift: crossing at a path endpoint");
      const bool crossed = gamma > 0 ? (t_star > 0 && t_star < gamma)
                                     : (t_star < 0 && t_star > gamma);
      if (!crossed) continue;
      if (std::abs(n) >= n_max - 1) shell_hit = true;
      CrossingEvent ev;
      ev.mode = n;
      ev.t_star = t_star;
      ev.sign = gamma > 0 ? +1 : -1;
      out.crossings.push_back(ev);
      out.sf += ev.sign;
    }
    if (!shell_hit) {
      out.n_max_used = n_max;
      std::sort(out.crossings.begin(), out.crossings.end(),
                [](const CrossingEvent& a, const CrossingEvent& b) { return a.mode < b.mode; });
      return out;
    }
    n_max += 8; // outer shells were not empty; widen and recount
  }
  fail(errc::unresolved, "flow_shift: mode cutoff certification failed");
}

FlowResult flow_general(const FlowQuery& q, const std::function<double(double, int)>& tau_of_t) {
  validate_query(q);
  const double gamma = q.gamma;
  if (gamma < 0) fail(errc::validation, "flow_general: gamma >= 0 required");
  FlowResult out;
  if (gamma == 0.0) return out;

  // mode range: crossings need rho_n(mu) inside the range of tau_n(.)
  double sup_tau = 0;
  for (int k = 0; k <= 16; ++k)
    for (int n = -24; n <= 24; ++n)
      sup_tau = std::max(sup_tau, std::fabs(tau_of_t(gamma * k / 16.0, n)));
  int n_max = q.n_max > 0 ? q.n_max : (int)std::ceil(sup_tau + 3.0 * q.b + 10.0);

  for (int attempt = 0; attempt < 12; ++attempt) {
    const std::vector<ModeData> data = mode_ratios(q.b, q.mu, n_max);
    out.crossings.clear();
    out.sf = 0;
    bool shell_hit = false;
    for (int i = 0; i <= 2 * n_max; ++i) {
      const int n = i - n_max;
      const double rho = data[i].rho;
      auto g = [&](double t) { return tau_of_t(t, n) - rho; };
      const double g0 = g(0.0), g1 = g(gamma);
      const double scale = 1.0 + std::fabs(rho);
      if (std::fabs(g0) < 1e-10 * scale || std::fabs(g1) < 1e-10 * scale)
        fail(errc::endpoint, "flow_general: mu in the spectrum at a path endpoint");

      // adaptive sampling until the root count stabilizes twice
      int prev_count = -1, stable = 0;
      std::vector<std::pair<double, int>> roots;
      for (int m = 64; m <= 16384; m *= 2) {
        roots.clear();
        double tp = 0.0, gp = g0;
        for (int k = 1; k <= m; ++k) {
          const double t = gamma * k / m;
          const double gv = g(t);
          if ((gp < 0 && gv > 0) || (gp > 0 && gv < 0)) {
            double a = tp, fa = gp, c = t;
            for (int it = 0; it < 60 && c - a > 1e-13 * gamma; ++it) {
              const double mid = 0.5 * (a + c);
              const double fm = g(mid);
              if ((fa > 0) == (fm > 0)) {
                a = mid;
                fa = fm;
              } else {
                c = mid;
              }
            }
            roots.push_back({0.5 * (a + c), gv > 0 ? +1 : -1});
          }
          tp = t;
          gp = gv;
        }
        if ((int)roots.size() == prev_count) {
          if (++stable == 2) break;
        } else {
          stable = 0;
        }
        prev_count = (int)roots.size();
      }
      int branch = 0;
      for (const auto& [t_star, sign] : roots) {
        if (std::abs(n) >= n_max - 1) shell_hit = true;
        CrossingEvent ev;
        ev.mode = n;
        ev.t_star = t_star;
        ev.sign = sign;
        ev.branch = branch++;
        out.crossings.push_back(ev);
        out.sf += sign;
      }
    }
    if (!shell_hit) {
      out.n_max_used = n_max;
      std::sort(out.crossings.begin(), out.crossings.end(), [](const auto& a, const auto& b) {
        return a.mode != b.mode ? a.mode < b.mode : a.t_star < b.t_star;
      });
      return out;
    }
    n_max += 8;
  }
  fail(errc::unresolved, "flow_general: mode cutoff certification failed");
}

WeylFit weyl_fit(double b, const RobinSymbol& tau, double mu, const std::vector<double>& gammas) {
  if (gammas.size() < 4) fail(errc::validation, "weyl_fit: need at least 4 gamma values");
  for (size_t i = 1; i < gammas.size(); ++i)
    if (!(gammas[i] > gammas[i - 1])) fail(errc::validation, "weyl_fit: gammas must increase");

  WeylFit fit;
  for (double g : gammas) {
    FlowQuery q;
    q.b = b;
    q.tau = tau;
    q.mu = mu;
    q.gamma = -g; // Dirichlet-ward counting lives on the downward shift
    fit.counts.push_back(std::abs(flow_shift(q).sf));
    q.gamma = g;
    fit.upward_counts.push_back(flow_shift(q).sf);
  }
  // affine least squares
  const size_t m = gammas.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < m; ++i) {
    sx += gammas[i];
    sy += fit.counts[i];
    sxx += gammas[i] * gammas[i];
    sxy += gammas[i] * fit.counts[i];
  }
  const double det = m * sxx - sx * sx;
  fit.slope = (m * sxy - sx * sy) / det;
  fit.intercept = (sxx * sy - sx * sxy) / det;
  for (size_t i = 0; i < m; ++i)
    fit.residuals.push_back(fit.counts[i] - (fit.slope * gammas[i] + fit.intercept));
  return fit;
}

MonotonicityReport monotonicity_report(double b, const RobinSymbol& tau0, const RobinSymbol& tau1,
                                       double mu, double mu0, double c, int n_scan) {
  if (!(mu0 < mu)) fail(errc::validation, "monotonicity_report: mu0 < mu required");
  const int check_range = n_scan + 32;
  for (int n = -check_range; n <= check_range; ++n)
    if (tau1(n) - tau0(n) < 0)
      fail(errc::not_monotone, "monotonicity_report: tau1 - tau0 has a negative mode");

  MonotonicityReport rep;
  FlowQuery q;
  q.b = b;
  q.tau = tau0;
  q.mu = mu;
  q.gamma = 1.0;
  const FlowResult fr =
      flow_general(q, [&](double t, int n) { return tau0(n) + t * (tau1(n) - tau0(n)); });
  rep.sf = fr.sf;
  for (const auto& ev : fr.crossings)
    if (ev.sign < 0) rep.all_signs_positive = false;

  // condition A: an eigenvalue of L_{b,tau0} in [mu0, mu) away from Landau levels
  const double pad = 1e-3 * b;
  std::vector<std::pair<double, double>> windows;
  double lo = mu0;
  for (int qq = 1;; ++qq) {
    const double lev = kernel::landau_level(qq, b, 1);
    if (lev >= mu) break;
    if (lev > lo + pad) {
      windows.push_back({lo, lev - pad});
      lo = lev + pad;
    } else if (lev > lo - pad) {
      lo = lev + pad;
    }
  }
  if (mu - 1e-9 > lo) windows.push_back({lo, mu - 1e-9});
  for (int n = -n_scan; n <= n_scan && !rep.condition_a; ++n) {
    disc::ModeProblem mp{n, b, tau0(n)};
    for (const auto& [wlo, whi] : windows) {
      const auto eigs = disc::mode_eigenvalues(mp, {wlo, whi});
      if (!eigs.empty()) {
        rep.condition_a = true;
        rep.witness_eigenvalue = eigs.front();
        break;
      }
    }
  }

  rep.condition_b = true;
  const double bound = (mu - mu0) * c * c;
  for (int n = -check_range; n <= check_range; ++n)
    if (tau1(n) - tau0(n) < bound) rep.condition_b = false;

  rep.strict_flow_verified = rep.condition_a && rep.condition_b ? (rep.sf >= 1) : false;
  return rep;
}

} // namespace robinflow::flow
