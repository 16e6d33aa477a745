#include "risopt/types.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "risopt/errors.hpp"

namespace risopt {

void SystemConfig::validate() const {
  if (M < 1 || K < 1) throw std::invalid_argument("M and K must be >= 1");
  if (M < K) throw std::invalid_argument("zero forcing needs M >= K");
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (b < 1 || b > 20) throw std::invalid_argument("b must be in [1, 20]");
  if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("bandwidth must be positive");
  if (!(user_radius >= 0.0)) throw std::invalid_argument("user radius must be >= 0");

  // Every link distance must stay away from zero or the path-loss laws blow up.
  const double bs_ris = planar_distance(bs_pos, ris_pos);
  const double bs_users = planar_distance(bs_pos, user_center) - user_radius;
  const double ris_users = planar_distance(ris_pos, user_center) - user_radius;
  if (!(bs_ris > 0.0) || !(bs_users > 0.0) || !(ris_users > 0.0)) {
    throw std::invalid_argument("link distances must be strictly positive over the user disk");
  }
}

int num_phase_levels(int bits) {
  if (bits < 1 || bits > 20) throw std::invalid_argument("bits must be in [1, 20]");
  return 1 << bits;
}

void validate_configuration(const Configuration& tau, int n, int bits) {
  const int levels = num_phase_levels(bits);
  if (static_cast<int>(tau.size()) != n) {
    throw InvalidConfigurationError("configuration length != N");
  }
  for (int t : tau) {
    if (t < 0 || t >= levels) {
      throw InvalidConfigurationError("phase index outside {0,...,2^b-1}");
    }
  }
}

namespace {

using nlohmann::json;

Vec2 vec2_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("coordinates must be [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

PathLossLaw law_from_json(const json& j) {
  return {j.at("offset_db").get<double>(), j.at("slope_db").get<double>()};
}

}  // namespace

SystemConfig system_config_from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  SystemConfig c;
  if (j.contains("M")) c.M = j["M"].get<int>();
  if (j.contains("K")) c.K = j["K"].get<int>();
  if (j.contains("N")) c.N = j["N"].get<int>();
  if (j.contains("b")) c.b = j["b"].get<int>();
  if (j.contains("snr_db")) c.snr_db = j["snr_db"].get<double>();
  if (j.contains("bandwidth_hz")) c.bandwidth_hz = j["bandwidth_hz"].get<double>();
  if (j.contains("noise_psd_dbm_hz")) c.noise_psd_dbm_hz = j["noise_psd_dbm_hz"].get<double>();
  if (j.contains("bs_pos")) c.bs_pos = vec2_from_json(j["bs_pos"]);
  if (j.contains("ris_pos")) c.ris_pos = vec2_from_json(j["ris_pos"]);
  if (j.contains("user_center")) c.user_center = vec2_from_json(j["user_center"]);
  if (j.contains("user_radius")) c.user_radius = j["user_radius"].get<double>();
  if (j.contains("pl_ris_db")) c.pl_ris_db = law_from_json(j["pl_ris_db"]);
  if (j.contains("pl_direct_db")) c.pl_direct_db = law_from_json(j["pl_direct_db"]);
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  c.validate();
  return c;
}

SystemConfig system_config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return system_config_from_json(buf.str());
}

std::string system_config_to_json(const SystemConfig& config) {
  json j;
  j["M"] = config.M;
  j["K"] = config.K;
  j["N"] = config.N;
  j["b"] = config.b;
  j["snr_db"] = config.snr_db;
  j["bandwidth_hz"] = config.bandwidth_hz;
  j["noise_psd_dbm_hz"] = config.noise_psd_dbm_hz;
  j["bs_pos"] = {config.bs_pos.x, config.bs_pos.y};
  j["ris_pos"] = {config.ris_pos.x, config.ris_pos.y};
  j["user_center"] = {config.user_center.x, config.user_center.y};
  j["user_radius"] = config.user_radius;
  j["pl_ris_db"] = {{"offset_db", config.pl_ris_db.offset_db},
                    {"slope_db", config.pl_ris_db.slope_db}};
  j["pl_direct_db"] = {{"offset_db", config.pl_direct_db.offset_db},
                       {"slope_db", config.pl_direct_db.slope_db}};
  j["seed"] = config.seed;
  return j.dump(2);
}

namespace {

void fnv_mix(std::uint64_t& h, double value) {
  std::uint64_t bits;
  static_assert(sizeof(bits) == sizeof(value));
  __builtin_memcpy(&bits, &value, sizeof(bits));
  for (int i = 0; i < 8; ++i) {
    h ^= (bits >> (8 * i)) & 0xffULL;
    h *= 0x100000001b3ULL;
  }
}

void fnv_mix(std::uint64_t& h, const Eigen::VectorXcd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    fnv_mix(h, v[i].real());
    fnv_mix(h, v[i].imag());
  }
}

}  // namespace

std::uint64_t channel_digest(const ChannelSet& channels) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& v : channels.h_d) fnv_mix(h, v);
  for (Eigen::Index c = 0; c < channels.G.cols(); ++c) {
    fnv_mix(h, Eigen::VectorXcd(channels.G.col(c)));
  }
  for (const auto& v : channels.h_r) fnv_mix(h, v);
  return h;
}

}  // namespace risopt
