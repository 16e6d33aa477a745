#include "risopt/system_model.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "risopt/errors.hpp"
#include "risopt/rng.hpp"

namespace risopt {

namespace {

// Substream salts; one independent stream per link group so that changing
// one dimension (say N) leaves the other groups' draws untouched.
enum : std::uint64_t { kPositions = 0, kDirect = 1, kBsRis = 2, kRisUser = 3 };

Vec2 uniform_in_disk(const Vec2& center, double radius, Rng& rng) {
  const double r = radius * std::sqrt(uniform_double(rng));
  const double a = 2.0 * std::numbers::pi * uniform_double(rng);
  return {center.x + r * std::cos(a), center.y + r * std::sin(a)};
}

}  // namespace

ChannelSet generate_channels(const SystemConfig& config, std::uint64_t realization) {
  config.validate();

  Rng pos_rng = make_stream(config.seed, {realization, kPositions});
  std::vector<Vec2> users(config.K);
  for (auto& u : users) u = uniform_in_disk(config.user_center, config.user_radius, pos_rng);

  ChannelSet cs;

  Rng d_rng = make_stream(config.seed, {realization, kDirect});
  cs.h_d.resize(config.K);
  for (int k = 0; k < config.K; ++k) {
    const double amp = config.pl_direct_db.amplitude(planar_distance(config.bs_pos, users[k]));
    cs.h_d[k].resize(config.M);
    for (int m = 0; m < config.M; ++m) cs.h_d[k][m] = amp * complex_normal(d_rng);
  }

  Rng g_rng = make_stream(config.seed, {realization, kBsRis});
  const double amp_g = config.pl_ris_db.amplitude(planar_distance(config.bs_pos, config.ris_pos));
  cs.G.resize(config.N, config.M);
  for (int n = 0; n < config.N; ++n) {
    for (int m = 0; m < config.M; ++m) cs.G(n, m) = amp_g * complex_normal(g_rng);
  }

  Rng r_rng = make_stream(config.seed, {realization, kRisUser});
  cs.h_r.resize(config.K);
  for (int k = 0; k < config.K; ++k) {
    const double amp = config.pl_ris_db.amplitude(planar_distance(config.ris_pos, users[k]));
    cs.h_r[k].resize(config.N);
    for (int n = 0; n < config.N; ++n) cs.h_r[k][n] = amp * complex_normal(r_rng);
  }

  return cs;
}

Eigen::VectorXcd phase_matrix(const Configuration& tau, int bits) {
  const int levels = num_phase_levels(bits);
  const double step = 2.0 * std::numbers::pi / levels;
  Eigen::VectorXcd theta(static_cast<Eigen::Index>(tau.size()));
  for (Eigen::Index n = 0; n < theta.size(); ++n) {
    const int t = tau[static_cast<std::size_t>(n)];
    if (t < 0 || t >= levels) {
      throw InvalidConfigurationError("phase index outside {0,...,2^b-1}");
    }
    theta[n] = std::polar(1.0, t * step);
  }
  return theta;
}

Eigen::MatrixXcd effective_channel(const ChannelSet& channels,
                                   const Eigen::VectorXcd& theta) {
  const int k_users = channels.num_users();
  const int m_ant = channels.num_antennas();
  if (theta.size() != channels.G.rows()) {
    throw std::invalid_argument("theta length != number of RIS elements");
  }
  Eigen::MatrixXcd f(k_users, m_ant);
  for (int k = 0; k < k_users; ++k) {
    f.row(k) = channels.h_d[k].adjoint() +
               channels.h_r[k].adjoint() * theta.asDiagonal() * channels.G;
  }
  return f;
}

Eigen::MatrixXcd effective_channel(const ChannelSet& channels,
                                   const Configuration& tau, int bits) {
  return effective_channel(channels, phase_matrix(tau, bits));
}

Eigen::VectorXd sinr(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& W,
                     double sigma2) {
  if (F.cols() != W.rows()) throw std::invalid_argument("F and W dimensions mismatch");
  const Eigen::MatrixXcd prod = F * W;  // (k, k') = f_k w_k'
  Eigen::VectorXd gamma(F.rows());
  for (Eigen::Index k = 0; k < F.rows(); ++k) {
    double interference = 0.0;
    for (Eigen::Index j = 0; j < prod.cols(); ++j) {
      if (j != k) interference += std::norm(prod(k, j));
    }
    gamma[k] = std::norm(prod(k, k)) / (interference + sigma2);
  }
  return gamma;
}

double sum_rate(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& W,
                double sigma2) {
  const Eigen::VectorXd gamma = sinr(F, W, sigma2);
  double rate = 0.0;
  for (Eigen::Index k = 0; k < gamma.size(); ++k) rate += std::log2(1.0 + gamma[k]);
  return rate;
}

}  // namespace risopt
