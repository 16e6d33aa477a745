#include "risopt/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>

#include "risopt/errors.hpp"
#include "risopt/system_model.hpp"

namespace risopt {

namespace {

// Gram inverse of F F^H with a Frobenius condition estimate; the diagonal of
// the inverse is exactly the diagonal of W_hat^H W_hat (the water-filling
// loads), since W_hat^H W_hat = (F F^H)^-1.
bool gram_inverse(const Eigen::MatrixXcd& F, Eigen::MatrixXcd& inv) {
  const Eigen::MatrixXcd gram = F * F.adjoint();
  inv = gram.inverse();
  const double cond = gram.norm() * inv.norm();
  return std::isfinite(cond) && cond < kMaxGramCondition;
}

}  // namespace

Eigen::MatrixXcd zf_directions(const Eigen::MatrixXcd& F) {
  if (F.rows() > F.cols()) {
    throw SingularChannelError("zero forcing needs K <= M");
  }
  Eigen::MatrixXcd inv;
  if (!gram_inverse(F, inv)) {
    throw SingularChannelError("effective channel Gram matrix is ill-conditioned");
  }
  return F.adjoint() * inv;
}

WaterFillingResult water_filling(const Eigen::VectorXd& v, double sigma2,
                                 double power_budget) {
  const Eigen::Index k_users = v.size();
  if (k_users == 0) throw std::invalid_argument("water filling needs K >= 1");
  if (!(sigma2 > 0.0) || !(power_budget > 0.0)) {
    throw std::invalid_argument("sigma2 and power budget must be positive");
  }
  for (Eigen::Index k = 0; k < k_users; ++k) {
    if (!(v[k] > 0.0) || !std::isfinite(v[k])) {
      throw std::invalid_argument("water filling needs positive finite loads");
    }
  }

  // Cost of activating user k is c_k = v_k sigma2; with m cheapest users
  // active the water level is 1/delta = (P_T + sum of their costs) / m.
  // The largest m whose level clears its own costs is the optimum.
  std::vector<int> order(static_cast<std::size_t>(k_users));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int c) { return v[a] * sigma2 < v[c] * sigma2; });

  std::vector<double> prefix(static_cast<std::size_t>(k_users) + 1, 0.0);
  for (Eigen::Index i = 0; i < k_users; ++i) {
    prefix[i + 1] = prefix[i] + v[order[i]] * sigma2;
  }

  double water = 0.0;
  Eigen::Index active = 0;
  for (Eigen::Index m = k_users; m >= 1; --m) {
    const double level = (power_budget + prefix[m]) / static_cast<double>(m);
    if (level > v[order[m - 1]] * sigma2) {
      water = level;
      active = m;
      break;
    }
  }
  // m = 1 always qualifies: level = P_T + c_1 > c_1.

  WaterFillingResult result;
  result.delta = 1.0 / water;
  result.p = Eigen::VectorXd::Zero(k_users);
  for (Eigen::Index i = 0; i < active; ++i) {
    const int k = order[i];
    result.p[k] = (water - v[k] * sigma2) / v[k];
  }
  return result;
}

BeamformingResult evaluate_configuration(const ChannelSet& channels,
                                         const Configuration& tau,
                                         const SystemConfig& config) {
  validate_configuration(tau, channels.num_elements(), config.b);
  const Eigen::MatrixXcd F = effective_channel(channels, tau, config.b);

  BeamformingResult r;
  r.W_hat = zf_directions(F);
  r.v = (r.W_hat.adjoint() * r.W_hat).diagonal().real();

  const double sigma2 = config.noise_power_w();
  const WaterFillingResult wf = water_filling(r.v, sigma2, config.transmit_power_w());
  r.p = wf.p;
  r.delta = wf.delta;
  r.W = r.W_hat * wf.p.cwiseSqrt().asDiagonal();

  r.sum_rate = 0.0;
  for (Eigen::Index k = 0; k < r.p.size(); ++k) {
    r.sum_rate += std::log2(1.0 + r.p[k] / sigma2);
  }
  return r;
}

SumRateFitness::SumRateFitness(const ChannelSet& channels,
                               const SystemConfig& config)
    : sigma2_(config.noise_power_w()),
      power_budget_(config.transmit_power_w()),
      n_(channels.num_elements()),
      bits_(config.b),
      m_(channels.num_antennas()),
      k_(channels.num_users()) {
  const int levels = num_phase_levels(bits_);
  phase_table_.resize(static_cast<std::size_t>(levels));
  for (int t = 0; t < levels; ++t) {
    phase_table_[t] = std::polar(1.0, t * 2.0 * std::numbers::pi / levels);
  }

  direct_.resize(k_, m_);
  reflect_.resize(n_, k_ * m_);
  for (int k = 0; k < k_; ++k) {
    direct_.row(k) = channels.h_d[k].adjoint();
    // h_r,k^H Theta G = theta^T diag(conj(h_r,k)) G; precompute the right factor.
    reflect_.middleCols(k * m_, m_) =
        channels.h_r[k].conjugate().asDiagonal() * channels.G;
  }
}

double SumRateFitness::operator()(const Configuration& tau) const {
  validate_configuration(tau, n_, bits_);

  Eigen::VectorXcd theta(n_);
  for (int n = 0; n < n_; ++n) {
    theta[n] = phase_table_[static_cast<std::size_t>(tau[n])];
  }
  const Eigen::RowVectorXcd reflected = theta.transpose() * reflect_;

  Eigen::MatrixXcd F(k_, m_);
  for (int k = 0; k < k_; ++k) {
    F.row(k) = direct_.row(k) + reflected.segment(k * m_, m_);
  }

  Eigen::MatrixXcd inv;
  if (!gram_inverse(F, inv)) return -std::numeric_limits<double>::infinity();

  Eigen::VectorXd v = inv.diagonal().real();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (!(v[k] > 0.0)) return -std::numeric_limits<double>::infinity();
  }

  const WaterFillingResult wf = water_filling(v, sigma2_, power_budget_);
  double rate = 0.0;
  for (Eigen::Index k = 0; k < wf.p.size(); ++k) {
    rate += std::log2(1.0 + wf.p[k] / sigma2_);
  }
  return rate;
}

}  // namespace risopt
