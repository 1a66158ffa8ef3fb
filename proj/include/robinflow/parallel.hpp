#ifndef ROBINFLOW_PARALLEL_HPP
#define ROBINFLOW_PARALLEL_HPP

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace robinflow {

// Thread cap from ROBINFLOW_THREADS; 0 means use the OpenMP default.
inline int thread_cap() {
  static int cap = [] {
    const char* env = std::getenv("ROBINFLOW_THREADS");
    if (!env) return 0;
    int v = std::atoi(env);
    return v > 0 ? v : 1;
  }();
  return cap;
}

inline bool run_serial() { return thread_cap() == 1; }

// Data-parallel loop over [lo, hi). Each body(i) must be independent of the
// others; results go into preallocated slots so the output is identical for
// the serial and parallel paths.
template <class F>
void parallel_for(int lo, int hi, F&& body, bool force_serial = false) {
  if (force_serial || run_serial()) {
    for (int i = lo; i < hi; ++i) body(i);
    return;
  }
#ifdef _OPENMP
  const int cap = thread_cap();
  if (cap > 0) {
#pragma omp parallel for schedule(dynamic) num_threads(cap)
    for (int i = lo; i < hi; ++i) body(i);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (int i = lo; i < hi; ++i) body(i);
  }
#else
  for (int i = lo; i < hi; ++i) body(i);
#endif
}

} // namespace robinflow

#endif
