#pragma once

#include <cstdint>

namespace tbp {

// Running per-arm statistics: pull count, mean, and sum of squared
// deviations, maintained by Welford's one-pass recurrence so that values at
// n ~ 1e4+ match a two-pass batch recomputation without catastrophic
// cancellation.
struct ArmStats {
  std::uint64_t n = 0;  // pulls observed
  double mean = 0.0;    // meaningful only once n >= 1
  double m2 = 0.0;      // sum of squared deviations from the running mean

  void add(double x) {
    n += 1;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  // Population variance (divisor n, not n-1). Callers must not read
  // estimates before the first pull; n == 0 returns 0 defensively.
  double variance() const {
    return n == 0 ? 0.0 : m2 / static_cast<double>(n);
  }
};

}  // namespace tbp
