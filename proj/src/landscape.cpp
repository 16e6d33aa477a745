#include "risopt/landscape.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "risopt/distance.hpp"
#include "risopt/errors.hpp"

namespace risopt {

namespace {

// Substream salts keeping reference search, FDC samples and walks independent.
enum : std::uint64_t { kRefSalt = 101, kFdcSalt = 102, kWalkSalt = 103 };

}  // namespace

double fdc(std::span<const double> fitnesses, std::span<const double> distances) {
  if (fitnesses.size() != distances.size()) {
    throw std::invalid_argument("fitness and distance samples differ in length");
  }
  const std::size_t count = fitnesses.size();
  if (count < 2) throw std::invalid_argument("fdc needs at least 2 samples");

  double mean_f = 0.0, mean_s = 0.0;
  for (std::size_t l = 0; l < count; ++l) {
    mean_f += fitnesses[l];
    mean_s += distances[l];
  }
  mean_f /= static_cast<double>(count);
  mean_s /= static_cast<double>(count);

  double cov = 0.0, var_f = 0.0, var_s = 0.0;
  for (std::size_t l = 0; l < count; ++l) {
    const double df = fitnesses[l] - mean_f;
    const double ds = distances[l] - mean_s;
    cov += df * ds;
    var_f += df * df;
    var_s += ds * ds;
  }
  if (!(var_f > 0.0) || !(var_s > 0.0)) {
    throw DegenerateSampleError("zero variance in fdc sample");
  }
  // cov / (L sigma_f sigma_s) with population deviations.
  return cov / std::sqrt(var_f * var_s);
}

double autocorrelation(std::span<const double> series, int nu) {
  if (series.size() < 2) throw std::invalid_argument("series needs >= 2 points");
  const long long walk_len = static_cast<long long>(series.size()) - 1;  // J
  if (nu < 0 || nu > walk_len - 1) {
    throw std::invalid_argument("need 0 <= nu <= J - 1");
  }

  double mean = 0.0;
  for (double f : series) mean += f;
  mean /= static_cast<double>(series.size());
  double var_sum = 0.0;
  for (double f : series) var_sum += (f - mean) * (f - mean);
  const double sigma2 = var_sum / static_cast<double>(series.size());
  if (!(sigma2 > 0.0)) throw DegenerateSampleError("flat series");

  // All lag-nu pairs, normalised by sigma_f^2 (J - nu); this convention makes
  // rho(0) = (J+1)/J and keeps rho(nu) symmetric under series reversal.
  double acc = 0.0;
  for (long long j = 0; j + nu <= walk_len; ++j) {
    acc += (series[static_cast<std::size_t>(j)] - mean) *
           (series[static_cast<std::size_t>(j + nu)] - mean);
  }
  return acc / (sigma2 * static_cast<double>(walk_len - nu));
}

double correlation_length_from_rho(double rho1) {
  if (rho1 == 0.0) throw UndefinedLengthError("rho(1) is zero");
  if (std::abs(rho1) >= 1.0) return std::numeric_limits<double>::infinity();
  return -1.0 / std::log(std::abs(rho1));
}

double correlation_length(std::span<const double> series) {
  return correlation_length_from_rho(autocorrelation(series, 1));
}

std::pair<Configuration, double> find_reference_optimum(
    const SumRateFitness& fitness, int n, int bits,
    const ReferenceOptimumParams& params, std::uint64_t seed, Parallelism par) {
  if (params.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  const FitnessFn fn = std::cref(fitness);

  std::vector<Individual> results(static_cast<std::size_t>(params.restarts));
  const auto run_one = [&](int r) {
    Rng rng = make_stream(seed, {kRefSalt, static_cast<std::uint64_t>(r)});
    results[static_cast<std::size_t>(r)] =
        run_ga(fn, n, bits, params.ga, rng, Parallelism::serial).best;
  };
#ifdef _OPENMP
  if (par == Parallelism::openmp) {
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < params.restarts; ++r) run_one(r);
  } else {
    for (int r = 0; r < params.restarts; ++r) run_one(r);
  }
#else
  (void)par;
  for (int r = 0; r < params.restarts; ++r) run_one(r);
#endif

  int best = 0;  // ties keep the earliest restart
  for (int r = 1; r < params.restarts; ++r) {
    if (results[r].fitness > results[best].fitness) best = r;
  }
  return {results[static_cast<std::size_t>(best)].tau,
          results[static_cast<std::size_t>(best)].fitness};
}

FdcStudyResult fdc_study(const SumRateFitness& fitness, int n, int bits,
                         const Configuration& reference, long long samples,
                         std::uint64_t seed, Parallelism par) {
  if (samples < 2) throw std::invalid_argument("need >= 2 samples");
  validate_configuration(reference, n, bits);

  std::vector<double> f(static_cast<std::size_t>(samples));
  std::array<std::vector<double>, 3> d;
  for (auto& v : d) v.resize(static_cast<std::size_t>(samples));

  const auto sample_one = [&](long long l) {
    Rng rng = make_stream(seed, {kFdcSalt, static_cast<std::uint64_t>(l)});
    const Configuration x = random_configuration(n, bits, rng);
    f[static_cast<std::size_t>(l)] = fitness(x);
    for (int q = 0; q < 3; ++q) {
      d[static_cast<std::size_t>(q)][static_cast<std::size_t>(l)] =
          static_cast<double>(cycle_q_distance(x, reference, q, bits));
    }
  };
#ifdef _OPENMP
  if (par == Parallelism::openmp) {
#pragma omp parallel for schedule(static)
    for (long long l = 0; l < samples; ++l) sample_one(l);
  } else {
    for (long long l = 0; l < samples; ++l) sample_one(l);
  }
#else
  (void)par;
  for (long long l = 0; l < samples; ++l) sample_one(l);
#endif

  // Degenerate channels (-inf fitness) would poison the correlation; drop them.
  std::vector<double> ff;
  std::array<std::vector<double>, 3> dd;
  ff.reserve(f.size());
  for (std::size_t l = 0; l < f.size(); ++l) {
    if (!std::isfinite(f[l])) continue;
    ff.push_back(f[l]);
    for (int q = 0; q < 3; ++q) dd[static_cast<std::size_t>(q)].push_back(d[static_cast<std::size_t>(q)][l]);
  }

  FdcStudyResult result;
  result.samples = static_cast<long long>(ff.size());
  for (int q = 0; q < 3; ++q) {
    result.fdc_per_metric[static_cast<std::size_t>(q)] =
        fdc(ff, dd[static_cast<std::size_t>(q)]);
  }
  return result;
}

WalkStudyResult walk_study(const SumRateFitness& fitness, int n, int bits,
                           long long walks, int walk_length,
                           std::uint64_t seed, Parallelism par) {
  if (walks < 1) throw std::invalid_argument("need >= 1 walk");
  if (walk_length < 2) throw std::invalid_argument("walk_length must be >= 2");

  std::vector<double> rho(static_cast<std::size_t>(walks), 0.0);
  std::vector<char> valid(static_cast<std::size_t>(walks), 0);

  const auto walk_one = [&](long long w) {
    Rng rng = make_stream(seed, {kWalkSalt, static_cast<std::uint64_t>(w)});
    Configuration cur = random_configuration(n, bits, rng);
    std::vector<double> series(static_cast<std::size_t>(walk_length) + 1);
    series[0] = fitness(cur);
    bool finite = std::isfinite(series[0]);
    for (int step = 1; step <= walk_length; ++step) {
      cur = random_walk_step(cur, bits, rng);
      series[static_cast<std::size_t>(step)] = fitness(cur);
      finite = finite && std::isfinite(series[static_cast<std::size_t>(step)]);
    }
    if (!finite) return;
    try {
      rho[static_cast<std::size_t>(w)] = autocorrelation(series, 1);
      valid[static_cast<std::size_t>(w)] = 1;
    } catch (const DegenerateSampleError&) {
      // flat walk: drop
    }
  };
#ifdef _OPENMP
  if (par == Parallelism::openmp) {
#pragma omp parallel for schedule(static)
    for (long long w = 0; w < walks; ++w) walk_one(w);
  } else {
    for (long long w = 0; w < walks; ++w) walk_one(w);
  }
#else
  (void)par;
  for (long long w = 0; w < walks; ++w) walk_one(w);
#endif

  double sum = 0.0;
  long long kept = 0;
  for (long long w = 0; w < walks; ++w) {  // serial, index order: reproducible
    if (valid[static_cast<std::size_t>(w)]) {
      sum += rho[static_cast<std::size_t>(w)];
      ++kept;
    }
  }
  if (kept == 0) throw DegenerateSampleError("every walk was flat");

  WalkStudyResult result;
  result.mean_rho1 = sum / static_cast<double>(kept);
  result.corr_length = correlation_length_from_rho(result.mean_rho1);
  result.corr_length_over_n = result.corr_length / static_cast<double>(n);
  result.walks = kept;
  result.dropped_walks = walks - kept;
  result.walk_length = walk_length;
  return result;
}

LandscapeReport analyze_landscape(const ChannelSet& channels,
                                  const SystemConfig& config,
                                  const LandscapeParams& params,
                                  std::uint64_t seed, Parallelism par) {
  const SumRateFitness fitness(channels, config);
  const int n = channels.num_elements();

  LandscapeReport report;
  report.num_elements = n;
  report.bits = config.b;

  if (params.with_fdc) {
    const auto [ref_tau, ref_fit] =
        find_reference_optimum(fitness, n, config.b, params.ref, seed, par);
    const FdcStudyResult study =
        fdc_study(fitness, n, config.b, ref_tau, params.samples, seed, par);
    report.fdc_per_metric = study.fdc_per_metric;
    report.fdc_samples = study.samples;
    report.reference_sum_rate = ref_fit;
  }
  if (params.with_walks) {
    const WalkStudyResult study = walk_study(fitness, n, config.b, params.walks,
                                             params.walk_length, seed, par);
    report.rho1 = study.mean_rho1;
    report.corr_length = study.corr_length;
    report.corr_length_over_n = study.corr_length_over_n;
    report.walks = study.walks;
    report.walk_length = study.walk_length;
  }
  return report;
}

}  // namespace risopt
