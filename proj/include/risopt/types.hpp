#ifndef RISOPT_TYPES_HPP
#define RISOPT_TYPES_HPP

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace risopt {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double planar_distance(const Vec2& a, const Vec2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Log-distance path loss: PL(d) = offset_db + slope_db * log10(d), d in m.
struct PathLossLaw {
  double offset_db = 0.0;
  double slope_db = 0.0;

  double operator()(double distance_m) const {
    return offset_db + slope_db * std::log10(distance_m);
  }
  /// Channel entry scale: sqrt(10^(-PL/10)).
  double amplitude(double distance_m) const {
    return std::pow(10.0, -(*this)(distance_m) / 20.0);
  }
};

/// Scenario parameters for the downlink RIS-aided MU-MISO system.
/// Defaults reproduce the reference setup: 4x4 BS/users, SNR 2 dB over a
/// 180 kHz band at -170 dBm/Hz, BS at the origin, RIS 100 m away, users in
/// a 10 m disk around (100, 30).
struct SystemConfig {
  int M = 4;  ///< BS antennas
  int K = 4;  ///< single-antenna users
  int N = 100;  ///< RIS elements
  int b = 2;  ///< quantization bits per element

  double snr_db = 2.0;  ///< P_T / sigma^2 in dB
  double bandwidth_hz = 180e3;
  double noise_psd_dbm_hz = -170.0;

  Vec2 bs_pos{0.0, 0.0};
  Vec2 ris_pos{100.0, 0.0};
  Vec2 user_center{100.0, 30.0};
  double user_radius = 10.0;

  PathLossLaw pl_ris_db{20.0, 20.0};      ///< BS-RIS and RIS-user links
  PathLossLaw pl_direct_db{32.6, 36.7};   ///< BS-user links

  std::uint64_t seed = 1;

  /// Noise power in linear watts: 10^((psd + 10 lg BW - 30)/10).
  double noise_power_w() const {
    return std::pow(10.0,
                    (noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz) - 30.0) / 10.0);
  }
  /// Transmit power budget in watts: sigma^2 * 10^(snr/10).
  double transmit_power_w() const {
    return noise_power_w() * std::pow(10.0, snr_db / 10.0);
  }

  /// Throws std::invalid_argument on violated invariants (M >= K, b >= 1,
  /// N >= 1, positive bandwidth, link distances bounded away from zero).
  void validate() const;
};

/// Parse a SystemConfig from a JSON document; missing fields keep their
/// defaults. Field names match the struct members.
SystemConfig system_config_from_json(const std::string& json_text);
SystemConfig system_config_from_file(const std::string& path);
std::string system_config_to_json(const SystemConfig& config);

/// RIS phase-index vector tau, entries in {0, ..., 2^b - 1}. The optimizer
/// genome.
using Configuration = std::vector<int>;

/// 2^b, with a guard against nonsensical bit counts.
int num_phase_levels(int bits);

/// Throws InvalidConfigurationError unless tau has length n and all entries
/// lie in {0, ..., 2^b - 1}.
void validate_configuration(const Configuration& tau, int n, int bits);

/// One realization of the three channel groups.
struct ChannelSet {
  std::vector<Eigen::VectorXcd> h_d;  ///< K vectors of length M (BS-user)
  Eigen::MatrixXcd G;                 ///< N x M (BS-RIS)
  std::vector<Eigen::VectorXcd> h_r;  ///< K vectors of length N (RIS-user)

  int num_users() const { return static_cast<int>(h_d.size()); }
  int num_antennas() const { return h_d.empty() ? 0 : static_cast<int>(h_d[0].size()); }
  int num_elements() const { return static_cast<int>(G.rows()); }
};

/// FNV-1a over the raw channel coefficients; lets the harness log which
/// realization each algorithm consumed.
std::uint64_t channel_digest(const ChannelSet& channels);

}  // namespace risopt

#endif
