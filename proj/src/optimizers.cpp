#include "risopt/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "risopt/beamforming.hpp"
#include "risopt/distance.hpp"
#include "risopt/errors.hpp"

namespace risopt {

namespace {

void check_probabilities(const OptimizerParams& p) {
  if (p.p_cr < 0.0 || p.p_cr > 1.0 || p.p_mu < 0.0 || p.p_mu > 1.0) {
    throw std::invalid_argument("probabilities must lie in [0, 1]");
  }
  if (p.max_evaluations < 1) throw std::invalid_argument("max_evaluations must be >= 1");
  if (p.stall_window < 1) throw std::invalid_argument("stall_window must be >= 1");
}

void evaluate_batch(const FitnessFn& fitness,
                    const std::vector<Configuration>& xs,
                    std::vector<double>& out, Parallelism par) {
  const int count = static_cast<int>(xs.size());
  out.resize(xs.size());
#ifdef _OPENMP
  if (par == Parallelism::openmp) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) out[i] = fitness(xs[i]);
    return;
  }
#else
  (void)par;
#endif
  for (int i = 0; i < count; ++i) out[i] = fitness(xs[i]);
}

}  // namespace

int min_species_size(long long t, long long t_max, double base, double span) {
  if (t < 0 || t_max < 1) throw std::invalid_argument("need 0 <= t and t_max >= 1");
  if (t > t_max) t = t_max;  // budget may outlive the schedule; hold the final size
  const double value = base + (static_cast<double>(t) / static_cast<double>(t_max)) * span;
  return static_cast<int>(std::floor(value + 0.5));  // half-up: counts
}

SpeciesPartition nearest_better_clustering(const std::vector<Individual>& population,
                                           int n_min, double phi, int bits) {
  const int n = static_cast<int>(population.size());
  SpeciesPartition part;
  if (n == 0) return part;

  // Sort by fitness descending; stable so equal fitness keeps index order.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int c) {
    return population[a].fitness > population[c].fitness;
  });

  if (n == 1) {
    part.species = {{0}};
    part.seed_of = {0};
    return part;
  }

  // Spanning tree: each non-best individual links to its nearest better
  // neighbor (cycle-1 distance; ties toward the lowest index).
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<long long> edge_dist(static_cast<std::size_t>(n), 0);
  for (int s = 1; s < n; ++s) {
    const int idx = order[s];
    long long best_d = std::numeric_limits<long long>::max();
    int best_j = -1;
    for (int r = 0; r < s; ++r) {
      const int cand = order[r];
      const long long d =
          cycle_q_distance(population[idx].tau, population[cand].tau, 1, bits);
      if (d < best_d || (d == best_d && cand < best_j)) {
        best_d = d;
        best_j = cand;
      }
    }
    parent[idx] = best_j;
    edge_dist[idx] = best_d;
  }

  // follow(i) = size of i's subtree; fill leaves-first (reverse sorted order
  // works because every parent sorts before its children).
  std::vector<long long> follow(static_cast<std::size_t>(n), 1);
  long long dist_sum = 0;
  for (int s = n - 1; s >= 1; --s) {
    follow[parent[order[s]]] += follow[order[s]];
    dist_sum += edge_dist[order[s]];
  }
  const double mu = static_cast<double>(dist_sum) / (n - 1);

  // Candidate edges by descending distance; stable sort keeps the
  // better-follower edge first among equals.
  std::vector<int> edges;
  edges.reserve(static_cast<std::size_t>(n) - 1);
  for (int s = 1; s < n; ++s) edges.push_back(order[s]);
  std::stable_sort(edges.begin(), edges.end(), [&](int a, int c) {
    return edge_dist[a] > edge_dist[c];
  });

  std::vector<char> cut(static_cast<std::size_t>(n), 0);
  const auto component_root = [&](int i) {
    while (parent[i] != -1 && !cut[i]) i = parent[i];
    return i;
  };

  for (int f : edges) {
    if (!(static_cast<double>(edge_dist[f]) > phi * mu)) break;  // sorted: rest fail too
    const int root = component_root(f);
    if (follow[f] >= n_min && follow[root] - follow[f] >= n_min) {
      cut[f] = 1;
      ++part.edges_cut;
      // The split subtree no longer counts toward its former leaders.
      for (int a = parent[f];; a = parent[a]) {
        follow[a] -= follow[f];
        if (a == root) break;
      }
    }
  }

  // Residual components; species ordered best seed first.
  std::vector<int> root_of(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) root_of[i] = component_root(i);
  std::vector<int> species_index(static_cast<std::size_t>(n), -1);
  for (int s = 0; s < n; ++s) {
    const int idx = order[s];
    if (root_of[idx] == idx) {
      species_index[idx] = static_cast<int>(part.species.size());
      part.species.emplace_back();
      part.seed_of.push_back(idx);
    }
  }
  for (int i = 0; i < n; ++i) {
    part.species[species_index[root_of[i]]].push_back(i);
  }
  return part;
}

std::pair<Configuration, Configuration> uniform_crossover_with_draws(
    const Configuration& a, const Configuration& c, double p_cr,
    std::span<const double> draws) {
  if (a.size() != c.size() || draws.size() != a.size()) {
    throw std::invalid_argument("crossover inputs differ in length");
  }
  Configuration child1 = a;
  Configuration child2 = c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (draws[i] >= p_cr) std::swap(child1[i], child2[i]);
  }
  return {std::move(child1), std::move(child2)};
}

std::pair<Configuration, Configuration> uniform_crossover(
    const Configuration& a, const Configuration& c, double p_cr, Rng& rng) {
  std::vector<double> draws(a.size());
  for (double& d : draws) d = uniform_double(rng);
  return uniform_crossover_with_draws(a, c, p_cr, draws);
}

Configuration random_reset_mutation(const Configuration& t, double p_mu,
                                    int bits, Rng& rng) {
  const int levels = num_phase_levels(bits);
  Configuration out = t;
  for (int& v : out) {
    if (uniform_double(rng) < p_mu) {
      int repl = uniform_int(rng, levels - 1);
      if (repl >= v) ++repl;  // draw among the other values only
      v = repl;
    }
  }
  return out;
}

bool metropolis_accept(double delta_f, double temperature, Rng& rng) {
  if (delta_f >= 0.0) return true;
  if (!(temperature > 0.0)) return false;
  return uniform_double(rng) < std::exp(delta_f / temperature);
}

namespace {

// Shared GA / NGA engine; the only difference is the species structure.
OptimizerResult run_evolution(const FitnessFn& fitness, int n, int bits,
                              const OptimizerParams& params, Rng& rng,
                              Parallelism par, bool niching) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  check_probabilities(params);
  if (params.population_size < 2) {
    throw std::invalid_argument("population_size must be >= 2");
  }
  if (params.t_max < 1) throw std::invalid_argument("t_max must be >= 1");
  const int nq = params.population_size;

  std::vector<Individual> pop(static_cast<std::size_t>(nq));
  std::vector<Configuration> taus(pop.size());
  for (int j = 0; j < nq; ++j) taus[j] = random_configuration(n, bits, rng);
  std::vector<double> fits;
  evaluate_batch(fitness, taus, fits, par);
  for (int j = 0; j < nq; ++j) pop[j] = {std::move(taus[j]), fits[j]};
  long long evals = nq;

  const auto best_of = [&]() {
    int bi = 0;
    for (int j = 1; j < nq; ++j) {
      if (pop[j].fitness > pop[bi].fitness) bi = j;
    }
    return bi;
  };

  OptimizerResult res;
  double best = pop[best_of()].fitness;
  res.history.push_back({0, evals, best, 1});

  int stall = 0;
  std::vector<Configuration> children(pop.size());
  std::vector<int> species_of(pop.size());
  for (long long t = 1; evals < params.max_evaluations; ++t) {
    SpeciesPartition part;
    if (niching) {
      const int n_min = min_species_size(t, params.t_max, params.nmin_base,
                                         params.nmin_span);
      part = nearest_better_clustering(pop, n_min, params.phi, bits);
    } else {
      part.species.emplace_back(nq);
      std::iota(part.species[0].begin(), part.species[0].end(), 0);
      part.seed_of.push_back(best_of());
    }
    for (std::size_t s = 0; s < part.species.size(); ++s) {
      for (int member : part.species[s]) species_of[member] = static_cast<int>(s);
    }

    // Children are drawn serially so the stream is thread-count independent;
    // only the evaluations fan out.
    for (int j = 0; j < nq; ++j) {
      const auto& sp = part.species[static_cast<std::size_t>(species_of[j])];
      Configuration child;
      if (sp.size() > 1) {
        const auto self =
            std::lower_bound(sp.begin(), sp.end(), j) - sp.begin();
        int mate = uniform_int(rng, static_cast<int>(sp.size()) - 1);
        if (mate >= self) ++mate;
        child = uniform_crossover(pop[j].tau, pop[sp[static_cast<std::size_t>(mate)]].tau,
                                  params.p_cr, rng)
                    .first;
      } else {
        child = pop[j].tau;  // lone member: mutation only
      }
      children[j] = random_reset_mutation(child, params.p_mu, bits, rng);
    }

    evaluate_batch(fitness, children, fits, par);
    evals += nq;
    for (int j = 0; j < nq; ++j) {
      if (fits[j] > pop[j].fitness) {
        pop[j].tau = std::move(children[j]);
        pop[j].fitness = fits[j];
      }
    }

    const double new_best = pop[best_of()].fitness;
    stall = (new_best - best < params.stall_tolerance) ? stall + 1 : 0;
    best = new_best;
    res.history.push_back(
        {t, evals, best, static_cast<int>(part.species.size())});
    if (stall >= params.stall_window) break;
  }

  res.best = pop[best_of()];
  res.evaluations = evals;
  return res;
}

}  // namespace

OptimizerResult run_nga(const FitnessFn& fitness, int n, int bits,
                        const OptimizerParams& params, Rng& rng,
                        Parallelism par) {
  return run_evolution(fitness, n, bits, params, rng, par, true);
}

OptimizerResult run_ga(const FitnessFn& fitness, int n, int bits,
                       const OptimizerParams& params, Rng& rng,
                       Parallelism par) {
  return run_evolution(fitness, n, bits, params, rng, par, false);
}

OptimizerResult run_sequential_search(const FitnessFn& fitness, int n,
                                      int bits, const OptimizerParams& params,
                                      Rng& rng) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  check_probabilities(params);
  const int levels = num_phase_levels(bits);

  Configuration cur = random_configuration(n, bits, rng);
  double f_cur = fitness(cur);
  long long evals = 1;

  OptimizerResult res;
  res.history.push_back({0, evals, f_cur, 1});

  bool improved = true;
  bool budget_hit = false;
  for (long long sweep = 1; improved && !budget_hit; ++sweep) {
    improved = false;
    for (int i = 0; i < n && !budget_hit; ++i) {
      const int old = cur[i];
      int best_val = old;
      double best_f = f_cur;  // ties keep the current value
      for (int v = 0; v < levels; ++v) {
        if (v == old) continue;
        if (evals >= params.max_evaluations) {
          budget_hit = true;
          break;
        }
        cur[i] = v;
        const double f = fitness(cur);
        ++evals;
        if (f > best_f) {
          best_f = f;
          best_val = v;
        }
      }
      cur[i] = best_val;
      if (best_val != old) {
        f_cur = best_f;
        improved = true;
      }
    }
    res.history.push_back({sweep, evals, f_cur, 1});
  }

  res.best = {std::move(cur), f_cur};
  res.evaluations = evals;
  return res;
}

OptimizerResult run_simulated_annealing(const FitnessFn& fitness, int n,
                                        int bits,
                                        const OptimizerParams& params,
                                        Rng& rng) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  check_probabilities(params);
  if (params.sa_alpha <= 0.0 || params.sa_alpha > 1.0) {
    throw std::invalid_argument("sa_alpha must be in (0, 1]");
  }
  long long evals = 0;

  // Initial temperature: fitness spread over uniform samples, unless pinned.
  double t0 = params.sa_t0;
  if (!(t0 > 0.0)) {
    std::vector<double> fs;
    fs.reserve(static_cast<std::size_t>(params.sa_t0_samples));
    for (int i = 0; i < params.sa_t0_samples; ++i) {
      const double f = fitness(random_configuration(n, bits, rng));
      ++evals;
      if (std::isfinite(f)) fs.push_back(f);
    }
    if (fs.size() >= 2) {
      const double mean =
          std::accumulate(fs.begin(), fs.end(), 0.0) / static_cast<double>(fs.size());
      double var = 0.0;
      for (double f : fs) var += (f - mean) * (f - mean);
      t0 = std::sqrt(var / static_cast<double>(fs.size()));
    }
    if (!(t0 > 0.0)) t0 = 1e-12;  // flat sample: degrade to hill climbing
  }

  Configuration cur = random_configuration(n, bits, rng);
  double f_cur = fitness(cur);
  ++evals;
  Individual best{cur, f_cur};

  OptimizerResult res;
  res.history.push_back({0, evals, best.fitness, 1});

  double temperature = t0;
  int stall = 0;
  for (long long it = 1; evals < params.max_evaluations; ++it) {
    Configuration prop = random_reset_mutation(cur, params.p_mu, bits, rng);
    const double f_prop = fitness(prop);
    ++evals;

    // Stall is judged on the incumbent's movement: a rejected (or identical)
    // proposal contributes zero change.
    double change = 0.0;
    if (metropolis_accept(f_prop - f_cur, temperature, rng)) {
      change = std::abs(f_prop - f_cur);
      cur = std::move(prop);
      f_cur = f_prop;
      if (f_cur > best.fitness) best = {cur, f_cur};
    }
    temperature *= params.sa_alpha;

    stall = (change < params.stall_tolerance) ? stall + 1 : 0;
    res.history.push_back({it, evals, best.fitness, 1});
    if (stall >= params.stall_window) break;
  }

  res.best = std::move(best);
  res.evaluations = evals;
  return res;
}

double evaluate_without_ris(const ChannelSet& channels,
                            const SystemConfig& config) {
  const int k_users = channels.num_users();
  const int m_ant = channels.num_antennas();
  Eigen::MatrixXcd F(k_users, m_ant);
  for (int k = 0; k < k_users; ++k) F.row(k) = channels.h_d[k].adjoint();

  const Eigen::MatrixXcd w_hat = zf_directions(F);
  const Eigen::VectorXd v = (w_hat.adjoint() * w_hat).diagonal().real();
  const double sigma2 = config.noise_power_w();
  const WaterFillingResult wf = water_filling(v, sigma2, config.transmit_power_w());

  double rate = 0.0;
  for (Eigen::Index k = 0; k < wf.p.size(); ++k) {
    rate += std::log2(1.0 + wf.p[k] / sigma2);
  }
  return rate;
}

}  // namespace risopt
