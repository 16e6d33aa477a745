#ifndef RISOPT_BEAMFORMING_HPP
#define RISOPT_BEAMFORMING_HPP

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "risopt/types.hpp"

namespace risopt {

/// Condition estimate above which F F^H is treated as singular
/// (Frobenius-norm estimate ||A||_F ||A^-1||_F, within a factor K of the
/// 2-norm condition number).
inline constexpr double kMaxGramCondition = 1e8;

/// Zero-forcing directions W_hat = F^H (F F^H)^-1, so F W_hat = I_K.
/// Throws SingularChannelError when the Gram matrix is ill-conditioned.
Eigen::MatrixXcd zf_directions(const Eigen::MatrixXcd& F);

struct WaterFillingResult {
  Eigen::VectorXd p;  ///< per-user powers, watts
  double delta;       ///< water-level normalizer: sum_k max{1/delta - v_k s2, 0} = P_T
};

/// Exact active-set water filling for max sum_k log2(1 + p_k / sigma2)
/// s.t. sum_k v_k p_k <= power_budget. Sorts users by v_k sigma2 and solves
/// the water level in closed form per active set; the budget binds exactly.
WaterFillingResult water_filling(const Eigen::VectorXd& v, double sigma2,
                                 double power_budget);

struct BeamformingResult {
  Eigen::MatrixXcd W;      ///< M x K transmit beamformer, W_hat * P^(1/2)
  Eigen::MatrixXcd W_hat;  ///< M x K zero-forcing directions
  Eigen::VectorXd p;       ///< allocated powers
  Eigen::VectorXd v;       ///< diagonal of W_hat^H W_hat
  double delta = 0.0;
  double sum_rate = 0.0;   ///< sum_k log2(1 + p_k / sigma2)
};

/// The full fitness pipeline for one RIS configuration:
/// effective channel -> ZF directions -> water filling -> sum rate.
/// Throws SingularChannelError for degenerate channels.
BeamformingResult evaluate_configuration(const ChannelSet& channels,
                                         const Configuration& tau,
                                         const SystemConfig& config);

/// Sum-rate fitness f(tau) with the per-user reflection products
/// precomputed, for the optimizer / landscape hot loops. Pure and
/// thread-safe; degenerate channels yield -infinity instead of throwing.
class SumRateFitness {
 public:
  SumRateFitness(const ChannelSet& channels, const SystemConfig& config);

  /// f(tau) in bits/s/Hz; -inf for singular effective channels.
  double operator()(const Configuration& tau) const;

  int elements() const { return n_; }
  int bits() const { return bits_; }
  double noise_power() const { return sigma2_; }
  double power_budget() const { return power_budget_; }

 private:
  Eigen::MatrixXcd reflect_;  // N x (K*M); block k = diag(conj(h_r,k)) G
  Eigen::MatrixXcd direct_;   // K x M; row k = h_d,k^H
  std::vector<std::complex<double>> phase_table_;  // 2^b unit phasors
  double sigma2_;
  double power_budget_;
  int n_, bits_, m_, k_;
};

}  // namespace risopt

#endif
