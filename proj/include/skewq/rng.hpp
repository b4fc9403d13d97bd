#pragma once

#include <cstdint>
#include <random>

#include "skewq/linalg.hpp"

namespace skewq {

// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

// Seed for the index-th independent draw under a parent seed:
//   child = splitmix64(parent + (index + 1) * 0x9E3779B97F4A7C15)
std::uint64_t child_seed(std::uint64_t parent, std::uint64_t index);

// Platform-independent random source. The engine is std::mt19937_64, whose
// output sequence is fixed by the standard; every derived variate below is
// computed explicitly from raw 64-bit words so results do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // 53-bit uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller, cosine branch:
  //   u1 in (0, 1], u2 in [0, 1), z = sqrt(-2 ln u1) cos(2 pi u2).
  double normal();

  // (z0 + i z1) / sqrt(2) from one Box-Muller pair; E|z|^2 = 1.
  Complex complex_normal();

  // Exponential(1) as -ln(u), u in (0, 1].
  double exponential();

 private:
  std::mt19937_64 engine_;
};

}  // namespace skewq
