#pragma once

#include <vector>

#include "tbp/rng.hpp"

namespace tbp {

enum class DistKind { Gaussian, Bernoulli, Constant };

// One arm: a reward distribution identified by its true mean and variance.
struct ArmSpec {
  double mean = 0.0;
  double variance = 0.0;  // 0 for Constant; p(1-p) for Bernoulli
  DistKind kind = DistKind::Constant;

  static ArmSpec gaussian(double mean, double variance);  // variance > 0
  static ArmSpec bernoulli(double p);                     // p in [0, 1]
  static ArmSpec constant(double value);
};

// A thresholding problem: K arms and the decision threshold tau. Arms are
// addressed by 0-based index throughout the library.
struct BanditInstance {
  std::vector<ArmSpec> arms;
  double threshold = 0.5;

  int num_arms() const { return static_cast<int>(arms.size()); }
};

// One i.i.d. draw from the arm's distribution. Gaussian draws are NOT
// clipped to [0, 1]; estimates are allowed to leave the unit interval.
double sample_reward(const ArmSpec& arm, RngStream& rng);

// Indices of arms whose true mean clears the threshold: { i : mean_i >= tau }.
// Boundary arms (mean == tau) are included.
std::vector<int> true_positive_set(const BanditInstance& instance);

// Same membership as a dense mask: mask[i] != 0 iff mean_i >= tau.
std::vector<char> true_positive_mask(const BanditInstance& instance);

}  // namespace tbp
