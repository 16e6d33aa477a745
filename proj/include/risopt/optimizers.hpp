#ifndef RISOPT_OPTIMIZERS_HPP
#define RISOPT_OPTIMIZERS_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "risopt/parallel.hpp"
#include "risopt/rng.hpp"
#include "risopt/types.hpp"

namespace risopt {

using FitnessFn = std::function<double(const Configuration&)>;

struct Individual {
  Configuration tau;
  double fitness = -std::numeric_limits<double>::infinity();
};

/// Output of nearest-better clustering: disjoint index groups covering the
/// population, the best member of each group, and how many spanning-tree
/// edges were cut.
struct SpeciesPartition {
  std::vector<std::vector<int>> species;  ///< population indices, ascending
  std::vector<int> seed_of;               ///< per-species best-fitness index
  int edges_cut = 0;
};

struct OptimizerParams {
  int population_size = 40;   ///< N_Q
  double p_cr = 0.7;          ///< crossover probability
  double p_mu = 0.01;         ///< per-position mutation probability
  long long max_evaluations = 40000;
  double stall_tolerance = 1e-6;
  int stall_window = 5;       ///< consecutive sub-tolerance iterations
  long long t_max = 1000;     ///< schedule horizon for the species-size ramp
  double phi = 1.0;           ///< mean-distance weight in edge cutting
  double nmin_base = 5.0;     ///< species-size ramp start
  double nmin_span = 5.0;     ///< species-size ramp increase
  std::uint64_t seed = 0;

  // Simulated-annealing schedule. t0 <= 0 means "sample the initial
  // temperature as the fitness std over sa_t0_samples uniform draws".
  double sa_alpha = 0.98;
  int sa_t0_samples = 100;
  double sa_t0 = 0.0;
};

/// Species-size floor ramp: round(base + (t / t_max) * span), half-up,
/// with t capped at t_max.
int min_species_size(long long t, long long t_max, double base = 5.0,
                     double span = 5.0);

/// Nearest-better clustering with a minimum species size. Builds the
/// spanning tree linking each individual to its nearest better neighbor
/// under cycle-1 distance, then cuts edges longer than phi * (mean edge
/// distance) whenever both resulting components keep at least n_min
/// members. Deterministic: fitness ties break toward the lower population
/// index, distance ties toward the better candidate.
SpeciesPartition nearest_better_clustering(const std::vector<Individual>& population,
                                           int n_min, double phi, int bits);

/// Positionwise exchange: entries swap where the draw is >= p_cr.
/// First child inherits a's non-exchanged entries.
std::pair<Configuration, Configuration> uniform_crossover(
    const Configuration& a, const Configuration& c, double p_cr, Rng& rng);

/// Deterministic core of uniform_crossover; draws[i] decides position i.
std::pair<Configuration, Configuration> uniform_crossover_with_draws(
    const Configuration& a, const Configuration& c, double p_cr,
    std::span<const double> draws);

/// Each position is replaced, with probability p_mu, by a uniform draw from
/// the 2^b - 1 other values (mutated entries always change).
Configuration random_reset_mutation(const Configuration& t, double p_mu,
                                    int bits, Rng& rng);

/// Metropolis rule: accept iff delta_f >= 0 or u < exp(delta_f / temperature).
bool metropolis_accept(double delta_f, double temperature, Rng& rng);

struct GenerationStat {
  long long generation = 0;
  long long evaluations = 0;
  double best_sum_rate = 0.0;
  int species_count = 1;
};

struct OptimizerResult {
  Individual best;
  std::vector<GenerationStat> history;
  long long evaluations = 0;
};

/// Niching genetic algorithm: nearest-better species, within-species mating,
/// uniform crossover + random-reset mutation, one-to-one replacement.
/// Stops when the evaluation budget is exhausted or the best sum rate moved
/// less than stall_tolerance for stall_window consecutive generations.
OptimizerResult run_nga(const FitnessFn& fitness, int n, int bits,
                        const OptimizerParams& params, Rng& rng,
                        Parallelism par = Parallelism::serial);

/// Plain GA: identical machinery with a single all-population species.
OptimizerResult run_ga(const FitnessFn& fitness, int n, int bits,
                       const OptimizerParams& params, Rng& rng,
                       Parallelism par = Parallelism::serial);

/// Coordinate sweeps: per position, try every other phase value with the
/// rest fixed, keep the argmax (ties keep the current value); repeat until
/// a full sweep changes nothing or the budget runs out.
OptimizerResult run_sequential_search(const FitnessFn& fitness, int n,
                                      int bits, const OptimizerParams& params,
                                      Rng& rng);

/// Single-solution annealer: random-reset proposals, Metropolis acceptance,
/// geometric cooling T <- alpha * T from the sampled initial temperature.
OptimizerResult run_simulated_annealing(const FitnessFn& fitness, int n,
                                        int bits,
                                        const OptimizerParams& params,
                                        Rng& rng);

/// Baseline without the RIS: ZF + water filling on the direct links only.
/// Throws SingularChannelError if the direct links are rank-deficient.
double evaluate_without_ris(const ChannelSet& channels,
                            const SystemConfig& config);

}  // namespace risopt

#endif
