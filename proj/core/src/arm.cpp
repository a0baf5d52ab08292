#include "tbp/arm.hpp"

#include <cmath>
#include <stdexcept>

namespace tbp {

ArmSpec ArmSpec::gaussian(double mean, double variance) {
  if (!(variance > 0.0)) {
    throw std::invalid_argument("gaussian arm requires variance > 0");
  }
  return ArmSpec{mean, variance, DistKind::Gaussian};
}

ArmSpec ArmSpec::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("bernoulli arm requires p in [0, 1]");
  }
  return ArmSpec{p, p * (1.0 - p), DistKind::Bernoulli};
}

ArmSpec ArmSpec::constant(double value) {
  return ArmSpec{value, 0.0, DistKind::Constant};
}

double sample_reward(const ArmSpec& arm, RngStream& rng) {
  switch (arm.kind) {
    case DistKind::Gaussian:
      return rng.gaussian(arm.mean, std::sqrt(arm.variance));
    case DistKind::Bernoulli:
      return static_cast<double>(rng.bernoulli(arm.mean));
    case DistKind::Constant:
      return arm.mean;
  }
  return arm.mean;  // unreachable
}

std::vector<int> true_positive_set(const BanditInstance& instance) {
  std::vector<int> out;
  for (int i = 0; i < instance.num_arms(); ++i) {
    if (instance.arms[i].mean >= instance.threshold) out.push_back(i);
  }
  return out;
}

std::vector<char> true_positive_mask(const BanditInstance& instance) {
  std::vector<char> mask(instance.arms.size(), 0);
  for (int i = 0; i < instance.num_arms(); ++i) {
    mask[i] = instance.arms[i].mean >= instance.threshold ? 1 : 0;
  }
  return mask;
}

}  // namespace tbp
