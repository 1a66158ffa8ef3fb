#include <chrono>
#include <cstdio>
#include <vector>

#include "robinflow/disc.hpp"
#include "robinflow/parallel.hpp"

// serial vs OpenMP comparison on the dominant kernel: radial solves across a
// mode sweep, as used by the flow counting.
int main(int argc, char** argv) {
  const int n_max = argc > 1 ? std::atoi(argv[1]) : 96;
  const double b = 1.0, mu = 0.5;
  std::vector<double> rho_serial(2 * n_max + 1), rho_parallel(2 * n_max + 1);

  auto run = [&](std::vector<double>& out, bool serial) {
    const auto t0 = std::chrono::steady_clock::now();
    robinflow::parallel_for(
        0, 2 * n_max + 1,
        [&](int i) { out[i] = robinflow::disc::solve_radial(i - n_max, b, mu).log_deriv; },
        serial);
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
  };

  const double t_serial = run(rho_serial, true);
  const double t_parallel = run(rho_parallel, false);

  int mismatches = 0;
  for (int i = 0; i <= 2 * n_max; ++i)
    if (rho_serial[i] != rho_parallel[i]) ++mismatches;

  std::printf("modes           : %d\n", 2 * n_max + 1);
  std::printf("serial          : %.3f s\n", t_serial);
  std::printf("parallel        : %.3f s\n", t_parallel);
  std::printf("speedup         : %.2fx\n", t_serial / t_parallel);
  std::printf("bitwise mismatch: %d\n", mismatches);
  return mismatches == 0 ? 0 : 1;
}
