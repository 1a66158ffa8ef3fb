#include "robinflow/flowengine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "robinflow/errors.hpp"

namespace robinflow::flowengine {

namespace {

Eigen::VectorXd herm_eigs(const Matrix& A) {
  const double scale = std::max(1.0, A.norm());
  if ((A - A.adjoint()).norm() > 1e-12 * scale)
    fail(errc::validation, "flowengine: matrix is not hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

int count_below(const Eigen::VectorXd& eigs, double mu) {
  int c = 0;
  for (int i = 0; i < eigs.size(); ++i)
    if (eigs[i] < mu) ++c;
  return c;
}

double min_dist(const Eigen::VectorXd& eigs, double mu) {
  double d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < eigs.size(); ++i) d = std::min(d, std::fabs(eigs[i] - mu));
  return d;
}

} // namespace

FlowResult spectral_flow_matrix_path(const HermitianPath& path, double mu) {
  if (!(path.t1 > path.t0)) fail(errc::validation, "spectral_flow: t1 > t0 required");
  const double span = path.t1 - path.t0;

  struct Node {
    double t;
    Eigen::VectorXd eigs;
    int below;
  };
  auto make_node = [&](double t) {
    Node n;
    n.t = t;
    n.eigs = herm_eigs(path.at(t));
    n.below = count_below(n.eigs, mu);
    return n;
  };

  std::vector<Node> grid;
  const int m0 = std::max(3, path.initial_samples);
  for (int i = 0; i < m0; ++i) grid.push_back(make_node(path.t0 + span * i / (m0 - 1)));

  const double scale = std::max(1.0, grid.front().eigs.cwiseAbs().maxCoeff());
  if (min_dist(grid.front().eigs, mu) < 1e-10 * scale ||
      min_dist(grid.back().eigs, mu) < 1e-10 * scale)
    fail(errc::endpoint, "spectral_flow: eigenvalue at path endpoint");

  // refine any interval whose counting jump could hide structure
  for (int round = 0; round < 24; ++round) {
    bool changed = false;
    std::vector<Node> next;
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
      next.push_back(grid[i]);
      const bool jump = grid[i].below != grid[i + 1].below;
      const double gap = std::min(min_dist(grid[i].eigs, mu), min_dist(grid[i + 1].eigs, mu));
      const double motion = (path.at(grid[i + 1].t) - path.at(grid[i].t)).norm();
      if ((jump || motion > 0.5 * gap) && (grid[i + 1].t - grid[i].t) > 1e-9 * span) {
        next.push_back(make_node(0.5 * (grid[i].t + grid[i + 1].t)));
        changed = true;
      }
    }
    next.push_back(grid.back());
    grid = std::move(next);
    if (!changed) break;
  }

  FlowResult out;
  // localize each jump of the counting function by bisection
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    if (grid[i].below == grid[i + 1].below) continue;
    Node a = grid[i], b = grid[i + 1];
    while (b.t - a.t > 1e-10 * span) {
      Node mid = make_node(0.5 * (a.t + b.t));
      if (mid.below != a.below)
        b = mid;
      else
        a = mid;
    }
    if (a.below != b.below) {
      Crossing c;
      c.t = 0.5 * (a.t + b.t);
      c.multiplicity = std::abs(b.below - a.below);
      c.sign = b.below < a.below ? +1 : -1;
      out.crossings.push_back(c);
    }
  }

  // barrier count over the refined partition (the computational formula);
  // each subinterval uses a level beta > 0 avoided by the sampled spectra
  int sf_barrier = 0;
  out.partition.reserve(grid.size());
  for (const auto& g : grid) out.partition.push_back(g.t);
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    const auto& L = grid[i];
    const auto& R = grid[i + 1];
    std::vector<double> pool;
    for (int k = 0; k < L.eigs.size(); ++k) pool.push_back(L.eigs[k] - mu);
    for (int k = 0; k < R.eigs.size(); ++k) pool.push_back(R.eigs[k] - mu);
    std::sort(pool.begin(), pool.end());
    const double motion = (path.at(R.t) - path.at(L.t)).norm();
    // find a positive gap wide enough that no eigenvalue can reach the barrier
    double beta = -1;
    double top = pool.back() + 2 * motion + 1.0;
    for (size_t k = 0; k + 1 <= pool.size(); ++k) {
      const double lo = pool[k];
      const double hi = (k + 1 < pool.size()) ? pool[k + 1] : top;
      const double mid = 0.5 * (lo + hi);
      if (mid > 0 && hi - lo > 2.2 * motion) {
        beta = mid;
        break;
      }
    }
    if (beta < 0) beta = top;
    auto count_in = [&](const Eigen::VectorXd& e) {
      int c = 0;
      for (int k = 0; k < e.size(); ++k)
        if (e[k] - mu >= 0 && e[k] - mu < beta) ++c;
      return c;
    };
    sf_barrier += count_in(R.eigs) - count_in(L.eigs);
  }

  int sf_jumps = 0;
  for (const auto& c : out.crossings) sf_jumps += c.sign * c.multiplicity;
  if (sf_barrier != sf_jumps)
    fail(errc::unresolved, "spectral_flow: barrier count disagrees with localized crossings");
  out.sf = sf_barrier;
  return out;
}

namespace {

std::vector<double> cayley_phases(const Matrix& A, double mu) {
  const int m = (int)A.rows();
  const Matrix I = Matrix::Identity(m, m);
  const Matrix U = (A - (mu + cplx(0, 1)) * I) * (A - (mu - cplx(0, 1)) * I).inverse();
  Eigen::ComplexEigenSolver<Matrix> es(U, false);
  std::vector<double> ph(m);
  for (int i = 0; i < m; ++i) ph[i] = std::arg(es.eigenvalues()[i]);
  std::sort(ph.begin(), ph.end());
  return ph;
}

double wrap_pi(double x) {
  while (x > M_PI) x -= 2 * M_PI;
  while (x <= -M_PI) x += 2 * M_PI;
  return x;
}

} // namespace

int cayley_winding(const HermitianPath& path, double mu) {
  const double span = path.t1 - path.t0;
  int samples = std::max(64, path.initial_samples * 2);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<std::vector<double>> ph(samples + 1);
    for (int i = 0; i <= samples; ++i)
      ph[i] = cayley_phases(path.at(path.t0 + span * i / samples), mu);
    const int m = (int)ph[0].size();

    double max_step = 0;
    int wind = 0;
    bool ok = true;
    for (int i = 0; i < samples && ok; ++i) {
      // circular matching between the sorted phase lists: best cyclic shift
      int best_shift = 0;
      double best_cost = std::numeric_limits<double>::infinity();
      for (int sft = 0; sft < m; ++sft) {
        double cost = 0;
        for (int k = 0; k < m; ++k) cost += std::fabs(wrap_pi(ph[i + 1][(k + sft) % m] - ph[i][k]));
        if (cost < best_cost) {
          best_cost = cost;
          best_shift = sft;
        }
      }
      for (int k = 0; k < m; ++k) {
        const double x = ph[i][k];
        const double d = wrap_pi(ph[i + 1][(k + best_shift) % m] - x);
        max_step = std::max(max_step, std::fabs(d));
        const double lifted = x + d;
        if (lifted > M_PI) ++wind;
        if (lifted <= -M_PI) --wind;
      }
      if (max_step > 1.2) ok = false;
    }
    if (ok && max_step < 0.5) return wind;
    samples *= 2;
  }
  fail(errc::unresolved, "cayley_winding: phase steps did not resolve under refinement");
}

cplx det_reg(int p, const Matrix& A) {
  if (p < 1) fail(errc::validation, "det_reg: p >= 1 required");
  Eigen::ComplexEigenSolver<Matrix> es(A, false);
  cplx result = 1.0;
  for (int i = 0; i < A.rows(); ++i) {
    const cplx lam = es.eigenvalues()[i];
    cplx expo = 0.0;
    cplx pw = 1.0;
    for (int j = 1; j <= p - 1; ++j) {
      pw *= lam;
      expo += ((j % 2) ? -1.0 : 1.0) * pw / double(j);
    }
    result *= (1.0 + lam) * std::exp(expo);
  }
  return result;
}

cplx det_reg_derivative(int p, const std::function<Matrix(double)>& A, double alpha,
                        const Matrix* A_prime) {
  const Matrix A0 = A(alpha);
  Matrix Ap;
  if (A_prime) {
    Ap = *A_prime;
  } else {
    const double h = 1e-5;
    Ap = (A(alpha + h) - A(alpha - h)) / (2 * h);
  }
  Eigen::ComplexEigenSolver<Matrix> es(A0, false);
  double min1 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < A0.rows(); ++i) min1 = std::min(min1, std::abs(1.0 + es.eigenvalues()[i]));
  if (min1 < 1e-12 * std::max(1.0, A0.norm()))
    fail(errc::singular, "det_reg_derivative: 1 + A is singular");

  Matrix power = Matrix::Identity(A0.rows(), A0.cols());
  for (int j = 0; j < p - 1; ++j) power *= A0;
  const Matrix inv = (Matrix::Identity(A0.rows(), A0.cols()) + A0).inverse();
  const cplx trace = (Ap * power * inv).trace();
  return trace * det_reg(p, A0);
}

double implicit_branch_slope(int p, const std::function<Matrix(double, double)>& A, double t,
                             double mu) {
  auto f = [&](double tt, double mm) { return det_reg(p, A(tt, mm)); };
  const cplx f0 = f(t, mu);
  const double h = 1e-5;
  const cplx ft = f(t + h, mu), ftm = f(t - h, mu);
  const cplx fm = f(t, mu + h), fmm = f(t, mu - h);
  const double scale =
      std::max({std::abs(ft), std::abs(ftm), std::abs(fm), std::abs(fmm), 1e-30});
  if (std::abs(f0) > 1e-8 * std::max(1.0, scale))
    fail(errc::not_on_branch, "implicit_branch_slope: det_p is not zero at (t, mu)");

  auto slope_at = [&](double tt) -> cplx {
    auto At = [&](double x) { return A(x, mu); };
    auto Am = [&](double x) { return A(tt, x); };
    const cplx dt = det_reg_derivative(p, At, tt);
    const cplx dm = det_reg_derivative(p, Am, mu);
    if (std::abs(dm) < 1e-12 * std::max(1.0, std::abs(dt))) return cplx(0, 0); // flag
    return -dt / dm;
  };

  auto Am0 = [&](double x) { return A(t, x); };
  auto At0 = [&](double x) { return A(x, mu); };
  const cplx dmu = det_reg_derivative(p, Am0, mu);
  const cplx dt0 = det_reg_derivative(p, At0, t);
  if (std::abs(dmu) >= 1e-12 * std::max(1.0, std::abs(dt0))) {
    return (-dt0 / dmu).real();
  }
  // finite part: evaluate the ratio slightly off t and extrapolate to eps = 0
  const double eps[3] = {1e-3, 5e-4, 2.5e-4};
  cplx v[3];
  for (int i = 0; i < 3; ++i) v[i] = slope_at(t + eps[i]);
  cplx tbl[3] = {v[0], v[1], v[2]};
  for (int lvl = 1; lvl < 3; ++lvl)
    for (int i = 0; i < 3 - lvl; ++i)
      tbl[i] = (tbl[i + 1] * eps[i] - tbl[i] * eps[i + lvl]) / (eps[i] - eps[i + lvl]);
  return tbl[0].real();
}

RobinSymbol truncate_finite_rank(const RobinSymbol& tau, int N) {
  if (N < 0) fail(errc::validation, "truncate_finite_rank: N >= 0 required");
  std::map<int, double> vals;
  for (int n = -N; n <= N; ++n) vals[n] = tau(n);
  return RobinSymbol::table(std::move(vals), RobinSymbol::zero());
}

Matrix truncate_finite_rank(const Matrix& m, int offset, int N) {
  Matrix out = m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (std::abs(i - offset) > N || std::abs(j - offset) > N) out(i, j) = 0;
  return out;
}

double sobolev_norm_gap(const std::function<double(int)>& tau, int N, double s_from, double s_to,
                        double order_t) {
  const double e = 0.5 * (s_to - s_from);
  double best = 0;
  const long scan_hi = std::max<long>(64L * (N + 1), 100000L);
  for (long k = N + 1; k <= scan_hi; ++k) {
    const double w = std::pow(1.0 + double(k) * double(k), e);
    best = std::max(best, w * std::max(std::fabs(tau(int(k))), std::fabs(tau(int(-k)))));
    // weights decay like k^{2e}; once the envelope cannot beat best, stop
    if (w * std::pow(double(k), order_t) * 4.0 < best && k > N + 64) break;
  }
  return best;
}

double sobolev_norm_gap(const RobinSymbol& tau, int N, double s_from, double s_to) {
  double gap = sobolev_norm_gap([&](int n) { return tau(n); }, N, s_from, s_to, tau.order());
  if (tau.kind == RobinSymbol::Kind::affine)
    gap = std::max(gap, std::fabs(tau.a)); // limit of (1+n^2)^{-1/2} (a|n|+c)
  return gap;
}

double sobolev_norm_gap(const Matrix& m, int offset, int N, double s_from, double s_to) {
  const Matrix t = truncate_finite_rank(m, offset, N);
  Matrix diff = m - t;
  for (int i = 0; i < diff.rows(); ++i)
    for (int j = 0; j < diff.cols(); ++j) {
      const double ni = i - offset, nj = j - offset;
      diff(i, j) *= std::pow(1.0 + ni * ni, s_to / 2.0) * std::pow(1.0 + nj * nj, -s_from / 2.0);
    }
  Eigen::JacobiSVD<Matrix> svd(diff);
  return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
}

bool kato_temple_certificate(double eta, double eps, double mu0, double mu) {
  if (mu0 >= mu) fail(errc::order, "kato_temple_certificate: mu0 < mu required");
  return eps * eps < (mu - eta) * (eta - mu0);
}

} // namespace robinflow::flowengine
