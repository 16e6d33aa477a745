#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "risopt/beamforming.hpp"
#include "risopt/distance.hpp"
#include "risopt/errors.hpp"
#include "risopt/rng.hpp"
#include "risopt/system_model.hpp"

using namespace risopt;

namespace {

Eigen::MatrixXcd random_matrix(int rows, int cols, Rng& rng) {
  Eigen::MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = complex_normal(rng);
  return m;
}

// Independent water-level oracle: bisect sum_k max(w - c_k, 0) = P.
Eigen::VectorXd water_filling_bisection(const Eigen::VectorXd& v, double sigma2,
                                        double budget) {
  const Eigen::VectorXd c = v * sigma2;
  double lo = c.minCoeff();
  double hi = c.maxCoeff() + budget;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double spent = (mid - c.array()).max(0.0).sum();
    (spent < budget ? lo : hi) = mid;
  }
  const double w = 0.5 * (lo + hi);
  return ((w - c.array()).max(0.0) / v.array()).matrix();
}

ChannelSet synthetic_channels(int k, int m, int n, std::uint64_t seed) {
  Rng rng = make_stream(seed);
  ChannelSet ch;
  ch.h_d.resize(k);
  ch.h_r.resize(k);
  for (int u = 0; u < k; ++u) {
    ch.h_d[u] = random_matrix(m, 1, rng);
    ch.h_r[u] = random_matrix(n, 1, rng);
  }
  ch.G = random_matrix(n, m, rng);
  return ch;
}

// sigma2 = 1 W, P_T = 10 W; keeps synthetic-channel rates at O(1) bits.
SystemConfig unit_scale_config(int m, int k, int n, int bits) {
  SystemConfig cfg;
  cfg.M = m;
  cfg.K = k;
  cfg.N = n;
  cfg.b = bits;
  cfg.bandwidth_hz = 1.0;
  cfg.noise_psd_dbm_hz = 30.0;
  cfg.snr_db = 10.0;
  return cfg;
}

}  // namespace

TEST_CASE("zf_directions inverts the channel rowspace") {
  Rng rng = make_stream(61);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 2 + uniform_int(rng, 3);
    const int m = k + uniform_int(rng, 4);
    const Eigen::MatrixXcd F = random_matrix(k, m, rng);
    const Eigen::MatrixXcd W_hat = zf_directions(F);
    REQUIRE(W_hat.rows() == m);
    REQUIRE(W_hat.cols() == k);
    const Eigen::MatrixXcd residual =
        F * W_hat - Eigen::MatrixXcd::Identity(k, k);
    CHECK(residual.cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("zf_directions rejects underdetermined and singular channels") {
  Rng rng = make_stream(67);
  CHECK_THROWS_AS(zf_directions(random_matrix(3, 2, rng)), SingularChannelError);

  Eigen::MatrixXcd F = random_matrix(3, 4, rng);
  F.row(2) = F.row(0);  // rank-deficient
  CHECK_THROWS_AS(zf_directions(F), SingularChannelError);
}

TEST_CASE("water filling: worked two-user examples") {
  SUBCASE("weak user shut off") {
    Eigen::VectorXd v(2);
    v << 1.0, 4.0;
    const WaterFillingResult r = water_filling(v, 1.0, 1.0);
    // c = (1, 4); only user 0 active: water = 2, p = (1, 0).
    CHECK(r.p(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.p(1) == 0.0);
    CHECK(r.delta == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("symmetric users split the budget") {
    Eigen::VectorXd v(2);
    v << 1.0, 1.0;
    const WaterFillingResult r = water_filling(v, 1.0, 2.0);
    CHECK(r.p(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.p(1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.delta == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("both active, unequal cost") {
    Eigen::VectorXd v(2);
    v << 1.0, 2.0;
    // c = (0.5, 1.0), water = (3 + 1.5) / 2 = 2.25.
    const WaterFillingResult r = water_filling(v, 0.5, 3.0);
    CHECK(r.p(0) == doctest::Approx(1.75).epsilon(1e-12));
    CHECK(r.p(1) == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(r.delta == doctest::Approx(1.0 / 2.25).epsilon(1e-12));
    CHECK(v.dot(r.p) == doctest::Approx(3.0).epsilon(1e-12));
  }
}

TEST_CASE("water filling rejects invalid inputs") {
  Eigen::VectorXd v(2);
  v << 1.0, 2.0;
  CHECK_THROWS_AS(water_filling(v, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(water_filling(v, 1.0, 0.0), std::invalid_argument);
  Eigen::VectorXd bad(2);
  bad << 1.0, -0.5;
  CHECK_THROWS_AS(water_filling(bad, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(water_filling(Eigen::VectorXd(), 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("water filling satisfies the KKT conditions on random instances") {
  Rng rng = make_stream(71);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + uniform_int(rng, 8);
    Eigen::VectorXd v(k);
    for (int i = 0; i < k; ++i) v(i) = 0.05 + 4.0 * uniform_double(rng);
    const double sigma2 = 0.1 + uniform_double(rng);
    const double budget = 0.2 + 5.0 * uniform_double(rng);

    const WaterFillingResult r = water_filling(v, sigma2, budget);
    const double water = 1.0 / r.delta;

    // Budget binds exactly.
    CHECK(v.dot(r.p) == doctest::Approx(budget).epsilon(1e-12));
    for (int i = 0; i < k; ++i) {
      CHECK(r.p(i) >= 0.0);
      if (r.p(i) > 0.0) {
        // Active users sit at the water level.
        CHECK(v(i) * r.p(i) + v(i) * sigma2 == doctest::Approx(water).epsilon(1e-10));
      } else {
        // Inactive users are above it.
        CHECK(v(i) * sigma2 >= water * (1.0 - 1e-12));
      }
    }

    // Cheaper users never get less power.
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (v(i) < v(j)) CHECK(r.p(i) >= r.p(j) - 1e-12);
  }
}

TEST_CASE("water filling agrees with an independent bisection solver") {
  Rng rng = make_stream(73);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + uniform_int(rng, 6);
    Eigen::VectorXd v(k);
    for (int i = 0; i < k; ++i) v(i) = 0.1 + 3.0 * uniform_double(rng);
    const double sigma2 = 0.2 + uniform_double(rng);
    const double budget = 0.5 + 4.0 * uniform_double(rng);

    const WaterFillingResult r = water_filling(v, sigma2, budget);
    const Eigen::VectorXd oracle = water_filling_bisection(v, sigma2, budget);
    for (int i = 0; i < k; ++i)
      CHECK(r.p(i) == doctest::Approx(oracle(i)).epsilon(1e-6));
  }
}

TEST_CASE("evaluate_configuration assembles the full ZF + WF pipeline") {
  const SystemConfig cfg = unit_scale_config(3, 2, 5, 2);
  const ChannelSet ch = synthetic_channels(2, 3, 5, 79);
  const double sigma2 = cfg.noise_power_w();
  const double budget = cfg.transmit_power_w();

  Rng rng = make_stream(83);
  for (int trial = 0; trial < 20; ++trial) {
    const Configuration tau = random_configuration(5, 2, rng);
    const BeamformingResult res = evaluate_configuration(ch, tau, cfg);

    const Eigen::MatrixXcd F = effective_channel(ch, tau, 2);
    CHECK((F * res.W_hat - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() <
          1e-10);
    // W = W_hat P^(1/2) and the budget binds through v.
    const Eigen::MatrixXcd rebuilt =
        res.W_hat * res.p.cwiseSqrt().asDiagonal().toDenseMatrix().cast<std::complex<double>>();
    CHECK((res.W - rebuilt).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(res.v.dot(res.p) == doctest::Approx(budget).epsilon(1e-10));
    CHECK(res.v.minCoeff() > 0.0);

    double want_rate = 0.0;
    for (int u = 0; u < 2; ++u) want_rate += std::log2(1.0 + res.p(u) / sigma2);
    CHECK(res.sum_rate == doctest::Approx(want_rate).epsilon(1e-12));

    // Against the generic SINR path: ZF leaves no interference.
    CHECK(res.sum_rate == doctest::Approx(sum_rate(F, res.W, sigma2)).epsilon(1e-9));
  }
}

TEST_CASE("evaluate_configuration at physical scale") {
  SystemConfig cfg;
  cfg.N = 16;
  cfg.seed = 5;
  const ChannelSet ch = generate_channels(cfg, 0);
  const double budget = cfg.transmit_power_w();

  Rng rng = make_stream(89);
  for (int trial = 0; trial < 10; ++trial) {
    const Configuration tau = random_configuration(16, 2, rng);
    const BeamformingResult res = evaluate_configuration(ch, tau, cfg);
    CHECK(res.sum_rate > 0.0);
    CHECK(res.v.dot(res.p) == doctest::Approx(budget).epsilon(1e-10));
    const Eigen::MatrixXcd F = effective_channel(ch, tau, 2);
    CHECK(res.sum_rate ==
          doctest::Approx(sum_rate(F, res.W, cfg.noise_power_w())).epsilon(1e-9));
  }
}

TEST_CASE("evaluate_configuration validates tau and channel rank") {
  const SystemConfig cfg = unit_scale_config(3, 2, 5, 2);
  ChannelSet ch = synthetic_channels(2, 3, 5, 97);
  CHECK_THROWS_AS(evaluate_configuration(ch, Configuration{0, 1}, cfg),
                  InvalidConfigurationError);
  CHECK_THROWS_AS(evaluate_configuration(ch, Configuration{0, 1, 2, 3, 4}, cfg),
                  InvalidConfigurationError);

  ch.h_d[1] = ch.h_d[0];
  ch.h_r[1] = ch.h_r[0];  // duplicate user: singular effective channel
  CHECK_THROWS_AS(evaluate_configuration(ch, Configuration(5, 0), cfg),
                  SingularChannelError);
}

TEST_CASE("SumRateFitness reproduces evaluate_configuration") {
  SUBCASE("unit scale") {
    const SystemConfig cfg = unit_scale_config(4, 3, 6, 2);
    const ChannelSet ch = synthetic_channels(3, 4, 6, 101);
    const SumRateFitness fit(ch, cfg);
    CHECK(fit.elements() == 6);
    CHECK(fit.bits() == 2);
    CHECK(fit.noise_power() == doctest::Approx(cfg.noise_power_w()).epsilon(1e-12));
    CHECK(fit.power_budget() == doctest::Approx(cfg.transmit_power_w()).epsilon(1e-12));

    Rng rng = make_stream(103);
    for (int trial = 0; trial < 50; ++trial) {
      const Configuration tau = random_configuration(6, 2, rng);
      const double direct = evaluate_configuration(ch, tau, cfg).sum_rate;
      CHECK(fit(tau) == doctest::Approx(direct).epsilon(1e-12));
    }
  }
  SUBCASE("physical scale") {
    SystemConfig cfg;
    cfg.N = 24;
    cfg.b = 3;
    cfg.seed = 12;
    const ChannelSet ch = generate_channels(cfg, 1);
    const SumRateFitness fit(ch, cfg);
    Rng rng = make_stream(107);
    for (int trial = 0; trial < 20; ++trial) {
      const Configuration tau = random_configuration(24, 3, rng);
      const double direct = evaluate_configuration(ch, tau, cfg).sum_rate;
      CHECK(fit(tau) == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("SumRateFitness flags degenerate channels with -inf") {
  const SystemConfig cfg = unit_scale_config(3, 2, 4, 1);
  ChannelSet ch = synthetic_channels(2, 3, 4, 109);
  ch.h_d[1] = ch.h_d[0];
  ch.h_r[1] = ch.h_r[0];
  const SumRateFitness fit(ch, cfg);
  const double f = fit(Configuration(4, 0));
  CHECK(std::isinf(f));
  CHECK(f < 0.0);
}
