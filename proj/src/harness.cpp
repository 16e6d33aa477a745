#include "risopt/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "risopt/beamforming.hpp"
#include "risopt/system_model.hpp"

namespace risopt {

namespace {

enum : std::uint64_t { kSweepSalt = 201 };

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int to_count(double v, const char* what) {
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-9 || r < 1.0) {
    throw std::invalid_argument(std::string(what) + " must be a positive integer");
  }
  return static_cast<int>(r);
}

void apply_sweep_value(SystemConfig& cfg, OptimizerParams& opt,
                       const std::string& param, double value) {
  if (param == "N") {
    cfg.N = to_count(value, "N");
  } else if (param == "b") {
    cfg.b = to_count(value, "b");
  } else if (param == "snr_db") {
    cfg.snr_db = value;
  } else if (param == "N_Q") {
    opt.population_size = to_count(value, "N_Q");
  } else {
    throw std::invalid_argument("unknown sweep param: " + param);
  }
}

void parse_optimizer(const nlohmann::json& j, OptimizerParams& p) {
  if (j.contains("population_size")) p.population_size = j["population_size"].get<int>();
  if (j.contains("p_cr")) p.p_cr = j["p_cr"].get<double>();
  if (j.contains("p_mu")) p.p_mu = j["p_mu"].get<double>();
  if (j.contains("max_evaluations")) p.max_evaluations = j["max_evaluations"].get<long long>();
  if (j.contains("stall_tolerance")) p.stall_tolerance = j["stall_tolerance"].get<double>();
  if (j.contains("stall_window")) p.stall_window = j["stall_window"].get<int>();
  if (j.contains("t_max")) p.t_max = j["t_max"].get<long long>();
  if (j.contains("phi")) p.phi = j["phi"].get<double>();
  if (j.contains("nmin_base")) p.nmin_base = j["nmin_base"].get<double>();
  if (j.contains("nmin_span")) p.nmin_span = j["nmin_span"].get<double>();
  if (j.contains("seed")) p.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("sa_alpha")) p.sa_alpha = j["sa_alpha"].get<double>();
  if (j.contains("sa_t0_samples")) p.sa_t0_samples = j["sa_t0_samples"].get<int>();
  if (j.contains("sa_t0")) p.sa_t0 = j["sa_t0"].get<double>();
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // '\n' endings everywhere
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

}  // namespace

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::nga: return "nga";
    case Algorithm::ga: return "ga";
    case Algorithm::sa: return "sa";
    case Algorithm::sequential: return "sequential";
    case Algorithm::no_ris: return "no_ris";
  }
  throw std::invalid_argument("unknown algorithm");
}

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "nga") return Algorithm::nga;
  if (name == "ga") return Algorithm::ga;
  if (name == "sa") return Algorithm::sa;
  if (name == "sequential") return Algorithm::sequential;
  if (name == "no_ris") return Algorithm::no_ris;
  throw std::invalid_argument("unknown algorithm: " + name);
}

ExperimentSpec experiment_from_json(const std::string& json_text) {
  const nlohmann::json j = nlohmann::json::parse(json_text);
  ExperimentSpec spec;
  if (j.contains("scenario")) {
    spec.scenario = system_config_from_json(j["scenario"].dump());
  }
  if (j.contains("sweep") && !j["sweep"].is_null()) {
    SweepAxis axis;
    axis.param = j["sweep"].at("param").get<std::string>();
    axis.values = j["sweep"].at("values").get<std::vector<double>>();
    if (axis.values.empty()) throw std::invalid_argument("sweep values are empty");
    spec.sweep = std::move(axis);
  }
  if (j.contains("algorithms")) {
    spec.algorithms.clear();
    for (const auto& name : j["algorithms"]) {
      spec.algorithms.push_back(algorithm_from_name(name.get<std::string>()));
    }
    if (spec.algorithms.empty()) throw std::invalid_argument("algorithm list is empty");
  }
  if (j.contains("runs")) spec.runs = j["runs"].get<int>();
  if (j.contains("output_path")) spec.output_path = j["output_path"].get<std::string>();
  if (j.contains("master_seed")) spec.master_seed = j["master_seed"].get<std::uint64_t>();
  if (j.contains("optimizer")) parse_optimizer(j["optimizer"], spec.optimizer);
  if (spec.runs < 1) throw std::invalid_argument("runs must be >= 1");
  return spec;
}

ExperimentSpec experiment_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open experiment file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return experiment_from_json(buf.str());
}

SweepResult run_sweep(const ExperimentSpec& spec, Parallelism par) {
  spec.scenario.validate();
  if (spec.runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (spec.algorithms.empty()) throw std::invalid_argument("no algorithms selected");

  std::string param = "none";
  std::vector<double> values{0.0};
  if (spec.sweep) {
    param = spec.sweep->param;
    values = spec.sweep->values;
    if (values.empty()) throw std::invalid_argument("sweep values are empty");
  }

  SweepResult out;
  for (std::size_t vi = 0; vi < values.size(); ++vi) {
    SystemConfig cfg = spec.scenario;
    OptimizerParams opt = spec.optimizer;
    if (spec.sweep) apply_sweep_value(cfg, opt, param, values[vi]);
    cfg.seed = spec.master_seed;
    cfg.validate();

    for (int run = 0; run < spec.runs; ++run) {
      // Channels depend on (master_seed, run) only: every algorithm — and
      // every sweep value that leaves the channel dimensions alone — sees
      // the same realization for a given run.
      const ChannelSet channels = generate_channels(cfg, static_cast<std::uint64_t>(run));
      const std::uint64_t digest = channel_digest(channels);
      const SumRateFitness fit(channels, cfg);
      const FitnessFn fn = std::cref(fit);

      for (std::size_t ai = 0; ai < spec.algorithms.size(); ++ai) {
        const Algorithm algo = spec.algorithms[ai];
        Rng rng = make_stream(spec.master_seed,
                              {kSweepSalt, vi, static_cast<std::uint64_t>(run),
                               static_cast<std::uint64_t>(algo)});
        RunRecord rec;
        rec.param = param;
        rec.value = values[vi];
        rec.algorithm = algo;
        rec.run = run;
        rec.channel_digest = digest;
        switch (algo) {
          case Algorithm::nga: {
            const OptimizerResult r = run_nga(fn, cfg.N, cfg.b, opt, rng, par);
            rec.sum_rate = r.best.fitness;
            rec.evaluations = r.evaluations;
            break;
          }
          case Algorithm::ga: {
            const OptimizerResult r = run_ga(fn, cfg.N, cfg.b, opt, rng, par);
            rec.sum_rate = r.best.fitness;
            rec.evaluations = r.evaluations;
            break;
          }
          case Algorithm::sa: {
            const OptimizerResult r = run_simulated_annealing(fn, cfg.N, cfg.b, opt, rng);
            rec.sum_rate = r.best.fitness;
            rec.evaluations = r.evaluations;
            break;
          }
          case Algorithm::sequential: {
            const OptimizerResult r = run_sequential_search(fn, cfg.N, cfg.b, opt, rng);
            rec.sum_rate = r.best.fitness;
            rec.evaluations = r.evaluations;
            break;
          }
          case Algorithm::no_ris: {
            rec.sum_rate = evaluate_without_ris(channels, cfg);
            rec.evaluations = 0;
            break;
          }
        }
        out.runs.push_back(std::move(rec));
      }
    }
  }

  // Aggregates, ordered (value, algorithm).
  for (std::size_t vi = 0; vi < values.size(); ++vi) {
    for (const Algorithm algo : spec.algorithms) {
      AggregateRecord agg;
      agg.param = param;
      agg.value = values[vi];
      agg.algorithm = algo;
      double sum = 0.0, sum_ev = 0.0;
      for (const RunRecord& rec : out.runs) {
        if (rec.value == values[vi] && rec.algorithm == algo && rec.param == param) {
          sum += rec.sum_rate;
          sum_ev += static_cast<double>(rec.evaluations);
          ++agg.runs;
        }
      }
      agg.mean_sum_rate = sum / agg.runs;
      agg.mean_evaluations = sum_ev / agg.runs;
      double ss = 0.0;
      for (const RunRecord& rec : out.runs) {
        if (rec.value == values[vi] && rec.algorithm == algo && rec.param == param) {
          const double d = rec.sum_rate - agg.mean_sum_rate;
          ss += d * d;
        }
      }
      agg.stddev_sum_rate = agg.runs > 1 ? std::sqrt(ss / (agg.runs - 1)) : 0.0;
      out.aggregates.push_back(std::move(agg));
    }
  }
  return out;
}

namespace {

std::string aggregate_path(const std::string& path) {
  const std::size_t dot = path.find_last_of('.');
  const std::size_t sep = path.find_last_of("/\\");
  if (dot == std::string::npos || (sep != std::string::npos && dot < sep)) {
    return path + "_agg";
  }
  return path.substr(0, dot) + "_agg" + path.substr(dot);
}

}  // namespace

void write_sweep_csv(const SweepResult& result, const std::string& path) {
  std::ofstream runs = open_csv(path);
  runs << "param,value,algorithm,run,sum_rate,evaluations,channel_digest\n";
  for (const RunRecord& r : result.runs) {
    runs << r.param << ',' << format_double(r.value) << ','
         << algorithm_name(r.algorithm) << ',' << r.run << ','
         << format_double(r.sum_rate) << ',' << r.evaluations << ','
         << r.channel_digest << '\n';
  }

  std::ofstream agg = open_csv(aggregate_path(path));
  agg << "param,value,algorithm,runs,mean_sum_rate,stddev_sum_rate,mean_evaluations\n";
  for (const AggregateRecord& a : result.aggregates) {
    agg << a.param << ',' << format_double(a.value) << ','
        << algorithm_name(a.algorithm) << ',' << a.runs << ','
        << format_double(a.mean_sum_rate) << ','
        << format_double(a.stddev_sum_rate) << ','
        << format_double(a.mean_evaluations) << '\n';
  }
}

std::vector<LandscapeRow> run_landscape_study(const LandscapeStudySpec& spec,
                                              Parallelism par) {
  spec.scenario.validate();
  const std::vector<int> ns =
      spec.n_values.empty() ? std::vector<int>{spec.scenario.N} : spec.n_values;
  const std::vector<int> bs =
      spec.b_values.empty() ? std::vector<int>{spec.scenario.b} : spec.b_values;

  std::vector<LandscapeRow> rows;
  std::uint64_t cell = 0;
  for (const int n : ns) {
    for (const int b : bs) {
      SystemConfig cfg = spec.scenario;
      cfg.N = n;
      cfg.b = b;
      cfg.seed = spec.master_seed;
      cfg.validate();
      const ChannelSet channels = generate_channels(cfg, 0);
      LandscapeRow row;
      row.num_elements = n;
      row.bits = b;
      row.report = analyze_landscape(channels, cfg, spec.params,
                                     combine_seed(spec.master_seed, cell), par);
      rows.push_back(std::move(row));
      ++cell;
    }
  }
  return rows;
}

void write_landscape_csv(const std::vector<LandscapeRow>& rows,
                         const std::string& path) {
  std::ofstream out = open_csv(path);
  out << "N,b,q,samples,fdc,reference_sum_rate,walks,walk_length,rho1,"
         "corr_length,corr_length_over_n\n";
  for (const LandscapeRow& row : rows) {
    for (int q = 0; q < 3; ++q) {
      out << row.num_elements << ',' << row.bits << ',' << q << ','
          << row.report.fdc_samples << ','
          << format_double(row.report.fdc_per_metric[static_cast<std::size_t>(q)]) << ','
          << format_double(row.report.reference_sum_rate) << ','
          << row.report.walks << ',' << row.report.walk_length << ','
          << format_double(row.report.rho1) << ','
          << format_double(row.report.corr_length) << ','
          << format_double(row.report.corr_length_over_n) << '\n';
    }
  }
}

}  // namespace risopt
