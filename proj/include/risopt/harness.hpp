#ifndef RISOPT_HARNESS_HPP
#define RISOPT_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "risopt/landscape.hpp"
#include "risopt/optimizers.hpp"
#include "risopt/parallel.hpp"
#include "risopt/types.hpp"

namespace risopt {

enum class Algorithm { nga, ga, sa, sequential, no_ris };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

/// One sweep axis: parameter name and the values it takes.
/// Supported params: "N", "b", "snr_db" (scenario fields) and "N_Q"
/// (population size).
struct SweepAxis {
  std::string param;
  std::vector<double> values;
};

struct ExperimentSpec {
  SystemConfig scenario;
  std::optional<SweepAxis> sweep;   ///< absent = single point
  std::vector<Algorithm> algorithms{Algorithm::nga, Algorithm::ga,
                                    Algorithm::sa, Algorithm::sequential,
                                    Algorithm::no_ris};
  int runs = 20;
  std::string output_path;
  std::uint64_t master_seed = 1;
  OptimizerParams optimizer;
};

ExperimentSpec experiment_from_json(const std::string& json_text);
ExperimentSpec experiment_from_file(const std::string& path);

/// One optimizer run on one channel realization.
struct RunRecord {
  std::string param;
  double value = 0.0;
  Algorithm algorithm = Algorithm::nga;
  int run = 0;
  double sum_rate = 0.0;
  long long evaluations = 0;
  std::uint64_t channel_digest = 0;
};

/// Mean/stddev over runs for one (sweep value, algorithm) cell.
struct AggregateRecord {
  std::string param;
  double value = 0.0;
  Algorithm algorithm = Algorithm::nga;
  int runs = 0;
  double mean_sum_rate = 0.0;
  double stddev_sum_rate = 0.0;  ///< sample stddev (n - 1)
  double mean_evaluations = 0.0;
};

struct SweepResult {
  std::vector<RunRecord> runs;
  std::vector<AggregateRecord> aggregates;
};

/// Runs every (sweep value, algorithm, run) cell. Channel realizations are
/// derived from (master_seed, run) only, so every algorithm — and every
/// sweep value that doesn't alter the channel dimensions — sees the same
/// channels for a given run index.
SweepResult run_sweep(const ExperimentSpec& spec,
                      Parallelism par = Parallelism::serial);

void write_sweep_csv(const SweepResult& result, const std::string& path);

struct LandscapeStudySpec {
  SystemConfig scenario;
  std::vector<int> n_values;   ///< empty = scenario.num_elements only
  std::vector<int> b_values;   ///< empty = scenario.phase_bits only
  LandscapeParams params;
  std::uint64_t master_seed = 1;
};

struct LandscapeRow {
  int num_elements = 0;
  int bits = 0;
  LandscapeReport report;
};

std::vector<LandscapeRow> run_landscape_study(
    const LandscapeStudySpec& spec, Parallelism par = Parallelism::serial);

void write_landscape_csv(const std::vector<LandscapeRow>& rows,
                         const std::string& path);

}  // namespace risopt

#endif
