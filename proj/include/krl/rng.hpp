#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "krl/types.hpp"

namespace krl {

// Seeded random stream with explicitly specified value derivations, so that
// sequences are stable across standard libraries and platforms.  The standard
// distributions are deliberately not used; their output is implementation
// defined, which would break the byte-identical-run contract.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi], inclusive, rejection-sampled (no modulo bias).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("Rng::uniform_int: lo > hi");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1u;
    if (span == 0) return static_cast<std::int64_t>(engine_());  // full range
    const std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % span + 1u) % span;
    const std::uint64_t bound = std::numeric_limits<std::uint64_t>::max() - rem;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x > bound);
    return lo + static_cast<std::int64_t>(x % span);
  }

  // Standard normal via Box-Muller; consumes exactly two uniforms per call.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  Vec normal_vec(int dim) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = normal();
    return v;
  }

  // Child stream derived from the original seed, independent of how much of
  // this stream has been consumed.
  Rng fork(std::uint64_t stream) const {
    return Rng(splitmix64(seed_ + 0x9e3779b97f4a7c15ull * (stream + 1u)));
  }

  std::uint64_t seed() const { return seed_; }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace krl
