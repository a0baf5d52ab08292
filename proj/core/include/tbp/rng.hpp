#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tbp {

// Deterministic, seedable random stream.
//
// The engine is std::mt19937_64, whose output sequence is pinned by the
// standard, and every distribution transform is hand-coded here (the
// std::*_distribution adaptors are implementation-defined and would break
// cross-platform replay). Copying a stream forks its state: both copies
// continue with identical draws.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(scramble(seed)) {}

  std::uint64_t seed() const { return seed_; }

  // Uniform on [0, 1), 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Gaussian via Box-Muller. Consumes exactly two uniforms per call (no
  // cached spare), so the draw count per sample is fixed for replay.
  double gaussian(double mean, double stddev) {
    double u1 = uniform01();
    const double u2 = uniform01();
    if (u1 <= 0.0) u1 = 0x1.0p-53;  // log(0) guard, probability 2^-53
    const double radius = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * radius * std::cos(two_pi * u2);
  }

  // 1.0 with probability p, else 0.0.
  double bernoulli(double p) { return uniform01() < p ? 1.0 : 0.0; }

  // Uniform integer in [0, n); n >= 1.
  std::uint64_t below(std::uint64_t n) {
    const auto k = static_cast<std::uint64_t>(uniform01() * static_cast<double>(n));
    return k >= n ? n - 1 : k;  // guards the rounding edge at u -> 1
  }

 private:
  static constexpr double two_pi = 6.283185307179586476925286766559;

  // splitmix64 finalizer: decorrelates adjacent seeds (callers hand out
  // base_seed + k per iteration).
  static std::uint64_t scramble(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace tbp
