#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "risopt/harness.hpp"
#include "risopt/system_model.hpp"

namespace {

using namespace risopt;

Parallelism parse_parallelism(const std::string& s) {
  if (s == "serial") return Parallelism::serial;
  if (s == "openmp") return Parallelism::openmp;
  throw CLI::ValidationError("--parallel must be serial or openmp");
}

// FDC interpretation thresholds for a maximization problem: strongly
// negative correlation with distance-to-optimum means the landscape guides
// the search, strongly positive means it misleads it.
std::string fdc_label(double value) {
  if (value <= -0.15) return "easy";
  if (value >= 0.15) return "misleading";
  return "uncorrelated";
}

void write_history_csv(const OptimizerResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "generation,evaluations,best_sum_rate,species_count\n";
  char buf[64];
  for (const GenerationStat& g : result.history) {
    std::snprintf(buf, sizeof(buf), "%.12g", g.best_sum_rate);
    out << g.generation << ',' << g.evaluations << ',' << buf << ','
        << g.species_count << '\n';
  }
}

int cmd_optimize(const std::string& spec_path, const std::string& algo_name,
                 std::uint64_t seed, long long budget, double stall_tolerance,
                 const std::string& out_path, Parallelism par) {
  SystemConfig cfg = system_config_from_file(spec_path);
  cfg.seed = seed;

  const ChannelSet channels = generate_channels(cfg, 0);
  const SumRateFitness fitness(channels, cfg);
  const FitnessFn fn = std::cref(fitness);

  OptimizerParams params;
  params.stall_tolerance = stall_tolerance;
  if (budget > 0) params.max_evaluations = budget;

  const Algorithm algo = algorithm_from_name(algo_name);
  Rng rng = make_stream(seed, {static_cast<std::uint64_t>(algo)});
  OptimizerResult result;
  switch (algo) {
    case Algorithm::nga: result = run_nga(fn, cfg.N, cfg.b, params, rng, par); break;
    case Algorithm::ga: result = run_ga(fn, cfg.N, cfg.b, params, rng, par); break;
    case Algorithm::sa: result = run_simulated_annealing(fn, cfg.N, cfg.b, params, rng); break;
    case Algorithm::sequential: result = run_sequential_search(fn, cfg.N, cfg.b, params, rng); break;
    case Algorithm::no_ris:
      throw std::invalid_argument("optimize expects one of: nga, ga, sa, sequential");
  }

  write_history_csv(result, out_path);
  std::cout << "algorithm=" << algo_name << " N=" << cfg.N << " b=" << cfg.b
            << " sum_rate=" << result.best.fitness
            << " evaluations=" << result.evaluations << " history=" << out_path
            << "\n";
  return 0;
}

int cmd_landscape(const std::string& spec_path, std::vector<int> n_values,
                  std::vector<int> b_values, long long samples, long long walks,
                  int walk_length, int restarts, std::uint64_t seed,
                  const std::string& out_path, bool skip_fdc, bool skip_walks,
                  Parallelism par) {
  LandscapeStudySpec spec;
  spec.scenario = system_config_from_file(spec_path);
  spec.n_values = std::move(n_values);
  spec.b_values = std::move(b_values);
  spec.master_seed = seed;
  spec.params.samples = samples;
  spec.params.walks = walks;
  spec.params.walk_length = walk_length;
  spec.params.ref.restarts = restarts;
  spec.params.with_fdc = !skip_fdc;
  spec.params.with_walks = !skip_walks;

  const std::vector<LandscapeRow> rows = run_landscape_study(spec, par);
  write_landscape_csv(rows, out_path);

  for (const LandscapeRow& row : rows) {
    std::cout << "N=" << row.num_elements << " b=" << row.bits;
    if (spec.params.with_fdc) {
      const double rho = row.report.fdc_per_metric[1];
      std::cout << " fdc_cycle1=" << rho << " (" << fdc_label(rho) << ")";
    }
    if (spec.params.with_walks) {
      std::cout << " rho1=" << row.report.rho1
                << " corr_length=" << row.report.corr_length
                << " corr_length/N=" << row.report.corr_length_over_n;
    }
    std::cout << "\n";
  }
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_path,
              std::uint64_t seed, int runs, long long budget, Parallelism par) {
  ExperimentSpec spec = experiment_from_file(spec_path);
  if (!out_path.empty()) spec.output_path = out_path;
  if (spec.output_path.empty()) spec.output_path = "sweep.csv";
  if (seed != 0) spec.master_seed = seed;
  if (runs > 0) spec.runs = runs;
  if (budget > 0) spec.optimizer.max_evaluations = budget;

  const SweepResult result = run_sweep(spec, par);
  write_sweep_csv(result, spec.output_path);

  for (const AggregateRecord& a : result.aggregates) {
    std::cout << a.param << "=" << a.value << " " << algorithm_name(a.algorithm)
              << ": mean=" << a.mean_sum_rate << " std=" << a.stddev_sum_rate
              << " runs=" << a.runs << "\n";
  }
  std::cout << "wrote " << spec.output_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIS-aided MU-MISO sum-rate optimization and landscape analysis"};
  app.require_subcommand(1);

  std::string parallel_mode = "serial";
  int threads = 0;
  app.add_option("--parallel", parallel_mode, "Execution policy: serial or openmp")
      ->capture_default_str();
  app.add_option("--threads", threads, "Thread cap for --parallel openmp");
  app.fallthrough();

  auto* opt_cmd = app.add_subcommand("optimize", "Run one optimizer on one channel realization");
  std::string opt_spec, opt_algo = "nga", opt_out = "history.csv";
  std::uint64_t opt_seed = 1;
  long long opt_budget = 0;
  double opt_stall = 0.0;
  opt_cmd->add_option("--spec", opt_spec, "Scenario JSON file")->required();
  opt_cmd->add_option("--algo", opt_algo, "nga, ga, sa or sequential")->capture_default_str();
  opt_cmd->add_option("--seed", opt_seed, "Master seed")->capture_default_str();
  opt_cmd->add_option("--budget", opt_budget, "Evaluation budget override");
  opt_cmd->add_option("--stall", opt_stall,
                      "Stall tolerance (0 = run out the budget; physical-scale "
                      "rates sit far below the classic 1e-6)")
      ->capture_default_str();
  opt_cmd->add_option("--out", opt_out, "History CSV path")->capture_default_str();

  auto* land_cmd = app.add_subcommand("landscape", "Fitness-landscape study over an (N, b) grid");
  std::string land_spec, land_out = "landscape.csv";
  std::vector<int> land_n, land_b;
  long long land_samples = 10000, land_walks = 1000;
  int land_walk_length = 200, land_restarts = 10;
  std::uint64_t land_seed = 1;
  bool skip_fdc = false, skip_walks = false;
  land_cmd->add_option("--spec", land_spec, "Scenario JSON file")->required();
  land_cmd->add_option("--N", land_n, "RIS element counts (default: scenario N)");
  land_cmd->add_option("--b", land_b, "Bit counts (default: scenario b)");
  land_cmd->add_option("--samples", land_samples, "FDC sample count")->capture_default_str();
  land_cmd->add_option("--walks", land_walks, "Random-walk count")->capture_default_str();
  land_cmd->add_option("--walk-length", land_walk_length, "Steps per walk")->capture_default_str();
  land_cmd->add_option("--restarts", land_restarts, "GA restarts for the reference optimum")
      ->capture_default_str();
  land_cmd->add_option("--seed", land_seed, "Master seed")->capture_default_str();
  land_cmd->add_option("--out", land_out, "Output CSV path")->capture_default_str();
  land_cmd->add_flag("--skip-fdc", skip_fdc, "Skip the FDC study");
  land_cmd->add_flag("--skip-walks", skip_walks, "Skip the random-walk study");

  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep from an experiment JSON");
  std::string sweep_spec, sweep_out;
  std::uint64_t sweep_seed = 0;
  int sweep_runs = 0;
  long long sweep_budget = 0;
  sweep_cmd->add_option("--spec", sweep_spec, "Experiment JSON file")->required();
  sweep_cmd->add_option("--out", sweep_out, "Output CSV path (overrides spec)");
  sweep_cmd->add_option("--seed", sweep_seed, "Master seed (overrides spec)");
  sweep_cmd->add_option("--runs", sweep_runs, "Monte Carlo runs (overrides spec)");
  sweep_cmd->add_option("--budget", sweep_budget, "Evaluation budget (overrides spec)");

  CLI11_PARSE(app, argc, argv);

  try {
    const Parallelism par = parse_parallelism(parallel_mode);
    if (threads > 0) set_max_threads(threads);
    if (opt_cmd->parsed()) {
      return cmd_optimize(opt_spec, opt_algo, opt_seed, opt_budget, opt_stall, opt_out, par);
    }
    if (land_cmd->parsed()) {
      return cmd_landscape(land_spec, land_n, land_b, land_samples, land_walks,
                           land_walk_length, land_restarts, land_seed, land_out,
                           skip_fdc, skip_walks, par);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(sweep_spec, sweep_out, sweep_seed, sweep_runs, sweep_budget, par);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
