#ifndef ROBINFLOW_FLOWENGINE_HPP
#define ROBINFLOW_FLOWENGINE_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "robinflow/robin_symbol.hpp"

namespace robinflow::flowengine {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// A continuous path of hermitian matrices on [t0, t1], sampled on demand.
struct HermitianPath {
  std::function<Matrix(double)> at;
  double t0 = 0;
  double t1 = 1;
  int initial_samples = 33;
};

struct Crossing {
  double t = 0;
  int multiplicity = 0;
  int sign = 0; // +1 upward through mu, -1 downward
};

struct FlowResult {
  int sf = 0;
  std::vector<Crossing> crossings;
  std::vector<double> partition; // subinterval endpoints used by the barrier count
};

// Spectral flow of (A(t) - mu) by per-subinterval barrier counting, with
// crossings localized by bisection of the counting function.
FlowResult spectral_flow_matrix_path(const HermitianPath& path, double mu);

// Winding of the Cayley transform (A - mu - i)(A - mu + i)^{-1} through -1;
// independent route, must agree with spectral_flow_matrix_path.
int cayley_winding(const HermitianPath& path, double mu);

// Regularized determinant det_p(1 + A) = det(1+A) exp(sum_{j<p} (-1)^j tr A^j / j).
cplx det_reg(int p, const Matrix& A);

// d/dalpha det_p(1 + A(alpha)) = tr(A' A^{p-1} (1+A)^{-1}) det_p(1+A).
// A' from centered differences (step 1e-5) unless supplied.
cplx det_reg_derivative(int p, const std::function<Matrix(double)>& A, double alpha,
                        const Matrix* A_prime = nullptr);

// Implicit eigenvalue-branch slope mu'(t) = -d_t f / d_mu f for
// f(t,mu) = det_p(1 + A(t,mu)), with a finite-part fallback when d_mu f = 0.
double implicit_branch_slope(int p, const std::function<Matrix(double, double)>& A, double t,
                             double mu);

// Finite-rank truncation keeping Fourier modes |n| <= N.
RobinSymbol truncate_finite_rank(const RobinSymbol& tau, int N);
// Matrix version: rows/cols indexed by n = idx - offset; entries with
// |n| > N are zeroed.
Matrix truncate_finite_rank(const Matrix& m, int offset, int N);

// Operator norm of (tau - T_(N)) as a map H^{s_from} -> H^{s_to} on the
// circle; for equivariant tau this is sup_{|n|>N} (1+n^2)^{(s_to-s_from)/2} |tau_n|.
double sobolev_norm_gap(const std::function<double(int)>& tau, int N, double s_from = 1.5,
                        double s_to = 0.5, double order_t = 0.0);
double sobolev_norm_gap(const RobinSymbol& tau, int N, double s_from = 1.5, double s_to = 0.5);
// General (non-diagonal) version: largest singular value of W_{s_to} (M - T_(N) M) W_{-s_from}.
double sobolev_norm_gap(const Matrix& m, int offset, int N, double s_from = 1.5,
                        double s_to = 0.5);

// Kato-Temple certificate: true iff eps^2 < (mu - eta)(eta - mu0).
bool kato_temple_certificate(double eta, double eps, double mu0, double mu);

} // namespace robinflow::flowengine

#endif
