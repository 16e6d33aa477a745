#ifndef RISOPT_SYSTEM_MODEL_HPP
#define RISOPT_SYSTEM_MODEL_HPP

#include <Eigen/Core>
#include <cstdint>

#include "risopt/types.hpp"

namespace risopt {

/// Draws one channel realization: user positions uniform in the configured
/// disk, then i.i.d. Rayleigh fading on every link scaled by the path-loss
/// amplitude sqrt(10^(-PL/10)). Deterministic in (config.seed, realization);
/// positions, direct links, BS-RIS and RIS-user links are drawn from
/// separate substreams, so the direct links do not change when N does.
ChannelSet generate_channels(const SystemConfig& config, std::uint64_t realization);

/// Diagonal of the reflection matrix: theta_n = e^(j tau_n 2 pi / 2^b),
/// unit amplitude. Throws InvalidConfigurationError on out-of-range entries.
Eigen::VectorXcd phase_matrix(const Configuration& tau, int bits);

/// Effective K x M downlink matrix; row k = h_d,k^H + h_r,k^H Theta G.
Eigen::MatrixXcd effective_channel(const ChannelSet& channels,
                                   const Eigen::VectorXcd& theta);
Eigen::MatrixXcd effective_channel(const ChannelSet& channels,
                                   const Configuration& tau, int bits);

/// Per-user SINR: gamma_k = |f_k w_k|^2 / (sum_{k'!=k} |f_k w_k'|^2 + sigma2).
Eigen::VectorXd sinr(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& W,
                     double sigma2);

/// sum_k log2(1 + gamma_k) in bits/s/Hz. The fitness everything downstream
/// maximizes.
double sum_rate(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& W,
                double sigma2);

}  // namespace risopt

#endif
