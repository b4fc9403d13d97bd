#include "skewq/rng.hpp"

#include <cmath>
#include <numbers>

namespace skewq {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t child_seed(std::uint64_t parent, std::uint64_t index) {
  return splitmix64(parent + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

double Rng::normal() {
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() {
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double r = std::sqrt(-std::log(u1));  // sqrt(-2 ln u1) / sqrt(2)
  double t = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

double Rng::exponential() { return -std::log(1.0 - uniform()); }

}  // namespace skewq
