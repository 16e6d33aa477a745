#ifndef RISOPT_RNG_HPP
#define RISOPT_RNG_HPP

#include <bit>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace risopt {

using Rng = std::mt19937_64;

// splitmix64 finalizer; spreads seed material before it reaches the engine.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t combine_seed(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b));
}

/// Deterministic RNG stream for (seed, salt...). Streams for distinct salt
/// tuples are independent for all practical purposes; this is what makes
/// per-sample / per-walk / per-run parallel loops reproducible regardless
/// of thread count.
inline Rng make_stream(std::uint64_t seed,
                       std::initializer_list<std::uint64_t> salts = {}) {
  std::uint64_t s = mix64(seed);
  for (std::uint64_t salt : salts) s = combine_seed(s, salt);
  return Rng(s);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_double(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n), n >= 1. Bitmask rejection, exactly uniform.
inline int uniform_int(Rng& rng, int n) {
  assert(n >= 1);
  const auto bound = static_cast<std::uint64_t>(n);
  if ((bound & (bound - 1)) == 0) {
    return static_cast<int>(rng() & (bound - 1));
  }
  const int bits = 64 - std::countl_zero(bound - 1);
  const std::uint64_t mask = (1ULL << bits) - 1;
  for (;;) {
    const std::uint64_t v = rng() & mask;
    if (v < bound) return static_cast<int>(v);
  }
}

/// Standard real normal N(0, 1) via Box-Muller.
inline double standard_normal(Rng& rng) {
  const double u1 = 1.0 - uniform_double(rng);  // (0, 1]
  const double u2 = uniform_double(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

/// Circularly-symmetric complex normal CN(0, 1): E|z|^2 = 1.
inline std::complex<double> complex_normal(Rng& rng) {
  const double u1 = 1.0 - uniform_double(rng);
  const double u2 = uniform_double(rng);
  const double r = std::sqrt(-std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace risopt

#endif
