#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "risopt/harness.hpp"
#include "risopt/landscape.hpp"
#include "risopt/optimizers.hpp"
#include "risopt/parallel.hpp"
#include "risopt/rng.hpp"
#include "risopt/system_model.hpp"

using namespace risopt;

namespace {

struct Fixture {
  SystemConfig cfg;
  ChannelSet channels;
  SumRateFitness fitness;

  Fixture()
      : cfg(make_config()),
        channels(generate_channels(cfg, 0)),
        fitness(channels, cfg) {}

  static SystemConfig make_config() {
    SystemConfig c;
    c.M = 3;
    c.K = 2;
    c.N = 10;
    c.b = 2;
    c.seed = 31;
    return c;
  }
};

}  // namespace

TEST_CASE("thread-count plumbing") {
  CHECK(max_threads() >= 1);
  set_max_threads(2);
  CHECK(max_threads() >= 1);
}

TEST_CASE("fdc_study is bitwise identical under OpenMP") {
  const Fixture fx;
  const Configuration reference(10, 0);
  set_max_threads(4);
  const FdcStudyResult serial =
      fdc_study(fx.fitness, 10, 2, reference, 500, 7, Parallelism::serial);
  const FdcStudyResult parallel =
      fdc_study(fx.fitness, 10, 2, reference, 500, 7, Parallelism::openmp);
  CHECK(serial.samples == parallel.samples);
  for (int q = 0; q < 3; ++q)
    CHECK(serial.fdc_per_metric[q] == parallel.fdc_per_metric[q]);
}

TEST_CASE("walk_study is bitwise identical under OpenMP") {
  const Fixture fx;
  set_max_threads(4);
  const WalkStudyResult serial =
      walk_study(fx.fitness, 10, 2, 30, 25, 11, Parallelism::serial);
  const WalkStudyResult parallel =
      walk_study(fx.fitness, 10, 2, 30, 25, 11, Parallelism::openmp);
  CHECK(serial.mean_rho1 == parallel.mean_rho1);
  CHECK(serial.corr_length == parallel.corr_length);
  CHECK(serial.walks == parallel.walks);
  CHECK(serial.dropped_walks == parallel.dropped_walks);
}

TEST_CASE("find_reference_optimum is bitwise identical under OpenMP") {
  const Fixture fx;
  ReferenceOptimumParams params;
  params.restarts = 4;
  params.ga.population_size = 12;
  params.ga.max_evaluations = 600;
  set_max_threads(4);
  const auto serial =
      find_reference_optimum(fx.fitness, 10, 2, params, 13, Parallelism::serial);
  const auto parallel =
      find_reference_optimum(fx.fitness, 10, 2, params, 13, Parallelism::openmp);
  CHECK(serial.first == parallel.first);
  CHECK(serial.second == parallel.second);
}

TEST_CASE("run_nga is bitwise identical under OpenMP") {
  const Fixture fx;
  const FitnessFn fn = std::cref(fx.fitness);
  OptimizerParams params;
  params.population_size = 14;
  params.max_evaluations = 700;
  params.stall_tolerance = 0.0;
  set_max_threads(4);

  Rng rng_s = make_stream(17);
  const OptimizerResult serial = run_nga(fn, 10, 2, params, rng_s, Parallelism::serial);
  Rng rng_p = make_stream(17);
  const OptimizerResult parallel = run_nga(fn, 10, 2, params, rng_p, Parallelism::openmp);

  CHECK(serial.best.tau == parallel.best.tau);
  CHECK(serial.best.fitness == parallel.best.fitness);
  REQUIRE(serial.history.size() == parallel.history.size());
  for (std::size_t i = 0; i < serial.history.size(); ++i) {
    CHECK(serial.history[i].best_sum_rate == parallel.history[i].best_sum_rate);
    CHECK(serial.history[i].species_count == parallel.history[i].species_count);
  }
}

TEST_CASE("run_sweep is bitwise identical under OpenMP") {
  const ExperimentSpec spec = experiment_from_json(R"({
    "scenario": {"M": 2, "K": 2, "N": 6, "b": 1},
    "runs": 2,
    "algorithms": ["nga", "ga", "no_ris"],
    "master_seed": 9,
    "optimizer": {"population_size": 8, "max_evaluations": 120, "stall_tolerance": 0.0}
  })");
  set_max_threads(4);
  const SweepResult serial = run_sweep(spec, Parallelism::serial);
  const SweepResult parallel = run_sweep(spec, Parallelism::openmp);
  REQUIRE(serial.runs.size() == parallel.runs.size());
  for (std::size_t i = 0; i < serial.runs.size(); ++i) {
    CHECK(serial.runs[i].sum_rate == parallel.runs[i].sum_rate);
    CHECK(serial.runs[i].evaluations == parallel.runs[i].evaluations);
  }
  for (std::size_t i = 0; i < serial.aggregates.size(); ++i) {
    CHECK(serial.aggregates[i].mean_sum_rate == parallel.aggregates[i].mean_sum_rate);
    CHECK(serial.aggregates[i].stddev_sum_rate == parallel.aggregates[i].stddev_sum_rate);
  }
}

TEST_CASE("analyze_landscape is bitwise identical under OpenMP") {
  const Fixture fx;
  LandscapeParams params;
  params.samples = 200;
  params.walks = 10;
  params.walk_length = 20;
  params.ref.restarts = 2;
  params.ref.ga.population_size = 10;
  params.ref.ga.max_evaluations = 300;
  set_max_threads(4);

  const LandscapeReport serial =
      analyze_landscape(fx.channels, fx.cfg, params, 19, Parallelism::serial);
  const LandscapeReport parallel =
      analyze_landscape(fx.channels, fx.cfg, params, 19, Parallelism::openmp);
  CHECK(serial.fdc_per_metric == parallel.fdc_per_metric);
  CHECK(serial.reference_sum_rate == parallel.reference_sum_rate);
  CHECK(serial.rho1 == parallel.rho1);
  CHECK(serial.corr_length == parallel.corr_length);
}
