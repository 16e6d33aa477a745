#include "risopt/distance.hpp"

#include <cstdlib>
#include <stdexcept>

namespace risopt {

int element_moves(int a, int c, int bits) {
  const int levels = num_phase_levels(bits);
  if (a < 0 || a >= levels || c < 0 || c >= levels) {
    throw std::invalid_argument("phase index outside {0,...,2^b-1}");
  }
  const int diff = std::abs(a - c);
  return std::min(diff, levels - diff);
}

long long cycle_q_distance(const Configuration& t1, const Configuration& t2,
                           int q, int bits) {
  if (t1.size() != t2.size()) {
    throw std::invalid_argument("configurations differ in length");
  }
  if (q < 0 || q > 2) throw std::invalid_argument("q must be in {0, 1, 2}");

  long long sum = 0;
  for (std::size_t i = 0; i < t1.size(); ++i) {
    const long long moves = element_moves(t1[i], t2[i], bits);
    switch (q) {
      case 0: sum += moves > 0 ? 1 : 0; break;  // 0^0 := 0
      case 1: sum += moves; break;
      default: sum += moves * moves; break;
    }
  }
  return sum;
}

std::vector<Configuration> unit_neighbors(const Configuration& t, int bits) {
  const int levels = num_phase_levels(bits);
  std::vector<Configuration> out;
  out.reserve(t.size() * (levels > 2 ? 2 : 1));
  for (std::size_t i = 0; i < t.size(); ++i) {
    Configuration up = t;
    up[i] = (t[i] + 1) % levels;
    out.push_back(std::move(up));
    if (levels > 2) {
      Configuration down = t;
      down[i] = (t[i] + levels - 1) % levels;
      out.push_back(std::move(down));
    }
  }
  return out;
}

Configuration random_configuration(int n, int bits, Rng& rng) {
  const int levels = num_phase_levels(bits);
  if (n < 1) throw std::invalid_argument("need n >= 1");
  Configuration tau(static_cast<std::size_t>(n));
  for (int& t : tau) t = uniform_int(rng, levels);
  return tau;
}

Configuration random_walk_step(const Configuration& t, int bits, Rng& rng) {
  const int levels = num_phase_levels(bits);
  if (t.empty()) throw std::invalid_argument("empty configuration");
  Configuration next = t;
  const std::size_t i = static_cast<std::size_t>(uniform_int(rng, static_cast<int>(t.size())));
  if (levels == 2) {
    next[i] ^= 1;
  } else {
    const int dir = uniform_int(rng, 2) == 0 ? 1 : levels - 1;
    next[i] = (t[i] + dir) % levels;
  }
  return next;
}

}  // namespace risopt
