#ifndef RISOPT_DISTANCE_HPP
#define RISOPT_DISTANCE_HPP

#include <vector>

#include "risopt/rng.hpp"
#include "risopt/types.hpp"

namespace risopt {

/// Minimum number of +-1 moves between two phase indices on the 2^b cycle:
/// Omega(a, c) = min(|a - c|, 2^b - |a - c|). Throws std::invalid_argument
/// on out-of-range inputs.
int element_moves(int a, int c, int bits);

/// Cycle-q distance D_q = sum_i Omega(t1_i, t2_i)^q for q in {0, 1, 2},
/// with 0^0 := 0 so D_0 counts non-common entries. Throws
/// std::invalid_argument on length mismatch or q outside {0, 1, 2}.
long long cycle_q_distance(const Configuration& t1, const Configuration& t2,
                           int q, int bits);

/// All configurations at cycle-1 distance exactly 1 from t: one entry moved
/// by +-1 mod 2^b. 2N neighbors for b >= 2; N for b = 1 (the moves coincide).
std::vector<Configuration> unit_neighbors(const Configuration& t, int bits);

/// Uniform draw from unit_neighbors(t) without materializing the set.
Configuration random_walk_step(const Configuration& t, int bits, Rng& rng);

/// n independent uniform phase indices.
Configuration random_configuration(int n, int bits, Rng& rng);

}  // namespace risopt

#endif
