#ifndef ROBINFLOW_QUADRATURE_HPP
#define ROBINFLOW_QUADRATURE_HPP

#include <cmath>
#include <complex>

#include "robinflow/errors.hpp"

namespace robinflow {

namespace detail {

// Gauss 7 / Kronrod 15 on [-1,1].
inline constexpr double kKronrodX[8] = {
    0.000000000000000000000000000000000e+00, 2.077849550078984676006894037732449e-01,
    4.058451513773971669066064120769615e-01, 5.860872354676911302941448382587296e-01,
    7.415311855993944398638647732807884e-01, 8.648644233597690727897127886409262e-01,
    9.491079123427585245261896840478513e-01, 9.914553711208126392068546975263285e-01};
inline constexpr double kKronrodW[8] = {
    2.094821410847278280129991748917143e-01, 2.044329400752988924141619992346491e-01,
    1.903505780647854099132564024210137e-01, 1.690047266392679028265834265985503e-01,
    1.406532597155259187451895905102379e-01, 1.047900103222501838398763225415180e-01,
    6.309209262997855329070066318920429e-02, 2.293532201052922496373200805896959e-02};
inline constexpr double kGaussW[4] = {
    4.179591836734693877551020408163265e-01, 3.818300505051189449503697754889751e-01,
    2.797053914892766679014677714237796e-01, 1.294849661688696932706114326790820e-01};

template <class T>
double mag(const T& v) {
  if constexpr (std::is_same_v<T, std::complex<double>>) return std::abs(v);
  else return std::fabs(v);
}

template <class F, class T>
void gk15(const F& f, double a, double b, T& result, double& err) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T fv[15];
  fv[7] = f(c);
  for (int i = 1; i < 8; ++i) {
    fv[7 - i] = f(c - h * kKronrodX[i]);
    fv[7 + i] = f(c + h * kKronrodX[i]);
  }
  T kron = kKronrodW[0] * fv[7];
  for (int i = 1; i < 8; ++i) kron += kKronrodW[i] * (fv[7 - i] + fv[7 + i]);
  T gauss = kGaussW[0] * fv[7];
  for (int i = 1; i < 4; ++i) gauss += kGaussW[i] * (fv[7 - 2 * i] + fv[7 + 2 * i]);
  result = h * kron;
  err = mag<T>(h * (kron - gauss));
}

template <class F, class T>
void adapt(const F& f, double a, double b, double abs_tol, double rel_tol, int depth, T& acc,
           double& err_acc, double scale) {
  T r;
  double e;
  gk15<F, T>(f, a, b, r, e);
  const double tol = std::max(abs_tol, rel_tol * std::max(scale, mag<T>(r)));
  if (e <= tol || depth <= 0 || (b - a) < 1e-15 * (std::fabs(a) + 1.0)) {
    acc += r;
    err_acc += e;
    return;
  }
  const double c = 0.5 * (a + b);
  adapt<F, T>(f, a, c, 0.5 * abs_tol, rel_tol, depth - 1, acc, err_acc, scale);
  adapt<F, T>(f, c, b, 0.5 * abs_tol, rel_tol, depth - 1, acc, err_acc, scale);
}

} // namespace detail

// Adaptive Gauss-Kronrod on [a,b]; T is double or complex<double>.
template <class T = double, class F>
T integrate(const F& f, double a, double b, double abs_tol = 1e-12, double rel_tol = 1e-12,
            int max_depth = 48) {
  if (!(a < b)) {
    if (a == b) return T(0);
    return -integrate<T, F>(f, b, a, abs_tol, rel_tol, max_depth);
  }
  T acc = T(0);
  double err = 0;
  // first sweep to estimate scale
  T coarse;
  double ce;
  detail::gk15<F, T>(f, a, b, coarse, ce);
  detail::adapt<F, T>(f, a, b, abs_tol, rel_tol, max_depth, acc, err, detail::mag<T>(coarse));
  return acc;
}

// Integral over [a, infinity) of an (eventually) exponentially decaying f.
// Maps t = a + u/(1-u) onto u in (0,1).
template <class T = double, class F>
T integrate_to_inf(const F& f, double a, double abs_tol = 1e-12, double rel_tol = 1e-12,
                   int max_depth = 52) {
  auto g = [&](double u) -> T {
    const double om = 1.0 - u;
    const double t = a + u / om;
    return f(t) / (om * om);
  };
  return integrate<T>(g, 0.0, 1.0 - 1e-14, abs_tol, rel_tol, max_depth);
}

} // namespace robinflow

#endif
