// Times the data-parallel kernels under both execution policies and verifies
// that the results stay bitwise identical — the speedup must never change
// the numbers.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "risopt/beamforming.hpp"
#include "risopt/landscape.hpp"
#include "risopt/optimizers.hpp"
#include "risopt/parallel.hpp"
#include "risopt/rng.hpp"
#include "risopt/system_model.hpp"

using namespace risopt;
using Clock = std::chrono::steady_clock;

namespace {

double run_ms(const std::function<void()>& fn) {
  const auto start = Clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void row(const char* kernel, double serial_ms, double openmp_ms, bool equal) {
  std::printf("%-24s %10.1f %10.1f %8.2fx   %s\n", kernel, serial_ms, openmp_ms,
              serial_ms / openmp_ms, equal ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  double scale = 1.0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--scale" && i + 1 < argc) {
      scale = std::atof(argv[++i]);
    } else if (arg == "--threads" && i + 1 < argc) {
      set_max_threads(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--scale X] [--threads T]\n", argv[0]);
      return 2;
    }
  }
  if (!(scale > 0.0)) {
    std::fprintf(stderr, "--scale must be positive\n");
    return 2;
  }

  SystemConfig cfg;  // M=K=4, N=100, b=2, SNR 2 dB
  cfg.seed = 1;
  const ChannelSet channels = generate_channels(cfg, 0);
  const SumRateFitness fitness(channels, cfg);
  const FitnessFn fn = std::cref(fitness);

  std::printf("threads available: %d\n", max_threads());
  std::printf("%-24s %10s %10s %9s\n", "kernel", "serial/ms", "openmp/ms", "speedup");

  bool all_equal = true;

  {
    const long long samples = static_cast<long long>(20000 * scale);
    FdcStudyResult s, p;
    const Configuration ref(static_cast<std::size_t>(cfg.N), 0);
    const double ts = run_ms([&] {
      s = fdc_study(fitness, cfg.N, cfg.b, ref, samples, 11, Parallelism::serial);
    });
    const double tp = run_ms([&] {
      p = fdc_study(fitness, cfg.N, cfg.b, ref, samples, 11, Parallelism::openmp);
    });
    const bool equal = s.fdc_per_metric == p.fdc_per_metric;
    all_equal &= equal;
    row("fdc_study", ts, tp, equal);
  }

  {
    const long long walks = static_cast<long long>(200 * scale);
    WalkStudyResult s, p;
    const double ts = run_ms([&] {
      s = walk_study(fitness, cfg.N, cfg.b, walks, 100, 13, Parallelism::serial);
    });
    const double tp = run_ms([&] {
      p = walk_study(fitness, cfg.N, cfg.b, walks, 100, 13, Parallelism::openmp);
    });
    const bool equal = s.mean_rho1 == p.mean_rho1 && s.corr_length == p.corr_length;
    all_equal &= equal;
    row("walk_study", ts, tp, equal);
  }

  {
    ReferenceOptimumParams params;
    params.restarts = 4;
    params.ga.max_evaluations = static_cast<long long>(10000 * scale);
    std::pair<Configuration, double> s, p;
    const double ts = run_ms([&] {
      s = find_reference_optimum(fitness, cfg.N, cfg.b, params, 17, Parallelism::serial);
    });
    const double tp = run_ms([&] {
      p = find_reference_optimum(fitness, cfg.N, cfg.b, params, 17, Parallelism::openmp);
    });
    const bool equal = s.first == p.first && s.second == p.second;
    all_equal &= equal;
    row("find_reference_optimum", ts, tp, equal);
  }

  {
    OptimizerParams params;
    params.max_evaluations = static_cast<long long>(20000 * scale);
    params.stall_tolerance = 0.0;
    OptimizerResult s, p;
    const double ts = run_ms([&] {
      Rng rng = make_stream(19);
      s = run_nga(fn, cfg.N, cfg.b, params, rng, Parallelism::serial);
    });
    const double tp = run_ms([&] {
      Rng rng = make_stream(19);
      p = run_nga(fn, cfg.N, cfg.b, params, rng, Parallelism::openmp);
    });
    const bool equal = s.best.tau == p.best.tau && s.best.fitness == p.best.fitness;
    all_equal &= equal;
    row("run_nga", ts, tp, equal);
  }

  if (!all_equal) {
    std::printf("policy mismatch detected\n");
    return 1;
  }
  return 0;
}
