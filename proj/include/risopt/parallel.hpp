#ifndef RISOPT_PARALLEL_HPP
#define RISOPT_PARALLEL_HPP

namespace risopt {

/// Execution policy for the data-parallel kernels (landscape sampling,
/// random walks, reference-optimum restarts, Monte Carlo sweeps).
/// Results are bitwise identical under both policies: every work item owns
/// a private RNG stream and reductions run serially in index order.
enum class Parallelism {
  serial,
  openmp,
};

/// Number of OpenMP threads the openmp policy would use (1 without OpenMP).
int max_threads();

/// Caps the OpenMP thread count; no-op without OpenMP.
void set_max_threads(int threads);

}  // namespace risopt

#endif
