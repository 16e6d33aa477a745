#ifndef RISOPT_LANDSCAPE_HPP
#define RISOPT_LANDSCAPE_HPP

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "risopt/beamforming.hpp"
#include "risopt/optimizers.hpp"
#include "risopt/parallel.hpp"
#include "risopt/types.hpp"

namespace risopt {

/// Fitness-distance correlation over paired samples. Uses population
/// standard deviations; throws DegenerateSampleError when either sample is
/// constant, std::invalid_argument on size mismatch or < 2 samples.
double fdc(std::span<const double> fitnesses, std::span<const double> distances);

/// Random-walk autocorrelation at lag nu, estimated over all lag-nu pairs
/// of the series and normalised by the population variance. nu = 0 is
/// allowed (returns (J+1)/J for a series of J+1 points).
double autocorrelation(std::span<const double> series, int nu);

/// Correlation length -1 / ln |rho(1)|. Throws UndefinedLengthError when
/// rho(1) is 0 (length would be 0/undefined ln) or |rho(1)| >= 1.
double correlation_length_from_rho(double rho1);
double correlation_length(std::span<const double> series);

struct ReferenceOptimumParams {
  int restarts = 10;
  OptimizerParams ga;  ///< per-restart GA settings

  ReferenceOptimumParams() {
    ga.population_size = 100;
    ga.t_max = 1000;
    ga.max_evaluations = 100000;
    // Physical-scale sum rates sit far below the generic 1e-6 stall
    // tolerance; the reference search should spend its whole budget.
    ga.stall_tolerance = 0.0;
  }
};

/// Best configuration over `restarts` independent GA runs; used as the
/// reference optimum for FDC studies.
std::pair<Configuration, double> find_reference_optimum(
    const SumRateFitness& fitness, int n, int bits,
    const ReferenceOptimumParams& params, std::uint64_t seed,
    Parallelism par = Parallelism::serial);

struct FdcStudyResult {
  std::array<double, 3> fdc_per_metric{};  ///< q = 0, 1, 2
  long long samples = 0;
};

/// FDC against a fixed reference optimum from uniform random samples,
/// for the three cycle-q metrics at once.
FdcStudyResult fdc_study(const SumRateFitness& fitness, int n, int bits,
                         const Configuration& reference, long long samples,
                         std::uint64_t seed,
                         Parallelism par = Parallelism::serial);

struct WalkStudyResult {
  double mean_rho1 = 0.0;        ///< lag-1 autocorrelation, walk average
  double corr_length = 0.0;      ///< from mean_rho1
  double corr_length_over_n = 0.0;
  long long walks = 0;           ///< walks contributing to the average
  long long dropped_walks = 0;   ///< constant-fitness walks, excluded
  int walk_length = 0;
};

/// Ruggedness from unit-step random walks: each walk starts uniformly and
/// applies walk_length single-position moves of +-1 (mod 2^b).
WalkStudyResult walk_study(const SumRateFitness& fitness, int n, int bits,
                           long long walks, int walk_length,
                           std::uint64_t seed,
                           Parallelism par = Parallelism::serial);

struct LandscapeParams {
  long long samples = 10000;   ///< FDC sample count
  long long walks = 1000;
  int walk_length = 200;
  ReferenceOptimumParams ref;
  bool with_fdc = true;
  bool with_walks = true;
};

struct LandscapeReport {
  int num_elements = 0;
  int bits = 0;
  std::array<double, 3> fdc_per_metric{};
  long long fdc_samples = 0;
  double reference_sum_rate = 0.0;
  double rho1 = 0.0;
  double corr_length = 0.0;
  double corr_length_over_n = 0.0;
  long long walks = 0;
  int walk_length = 0;
};

LandscapeReport analyze_landscape(const ChannelSet& channels,
                                  const SystemConfig& config,
                                  const LandscapeParams& params,
                                  std::uint64_t seed,
                                  Parallelism par = Parallelism::serial);

}  // namespace risopt

#endif
