#include "tbp/policy.hpp"

#include <stdexcept>
#include <utility>

#include "tbp/augucb.hpp"
#include "tbp/baselines.hpp"
#include "tbp/csar.hpp"
#include "tbp/errors.hpp"

namespace tbp {

std::string to_string(PolicyId id) {
  switch (id) {
    case PolicyId::AugUcb: return "augucb";
    case PolicyId::Apt: return "apt";
    case PolicyId::Ucbe: return "ucbe";
    case PolicyId::Ucbev: return "ucbev";
    case PolicyId::Csar: return "csar";
    case PolicyId::Ua: return "ua";
  }
  return "unknown";
}

PolicyId parse_policy_id(const std::string& name) {
  if (name == "augucb") return PolicyId::AugUcb;
  if (name == "apt") return PolicyId::Apt;
  if (name == "ucbe") return PolicyId::Ucbe;
  if (name == "ucbev") return PolicyId::Ucbev;
  if (name == "csar") return PolicyId::Csar;
  if (name == "ua") return PolicyId::Ua;
  throw std::invalid_argument("unknown policy name: " + name);
}

Policy::Policy(BanditInstance instance, std::int64_t budget)
    : instance_(std::move(instance)),
      budget_(budget),
      stats_(instance_.arms.size()),
      classified_(instance_.arms.size(), 0) {
  if (instance_.num_arms() < 1) {
    throw std::invalid_argument("policy requires at least one arm");
  }
  if (budget_ < 1) throw BudgetTooSmallError("budget must be positive");
}

std::optional<PullRecord> Policy::step(RngStream& rng) {
  if (halted_) return std::nullopt;
  if (t_ >= budget_) throw BudgetExhaustedError("budget exhausted");

  std::optional<int> choice = select_arm(rng);
  if (!choice.has_value()) {
    halted_ = true;
    return std::nullopt;
  }
  const int arm = *choice;
  const double reward = sample_reward(instance_.arms[arm], rng);
  stats_[arm].add(reward);
  classified_[arm] = stats_[arm].mean >= instance_.threshold ? 1 : 0;
  ++t_;
  after_pull(arm);
  return PullRecord{arm, classified_[arm] != 0};
}

std::unique_ptr<Policy> make_policy(const PolicyParams& params,
                                    BanditInstance instance,
                                    std::int64_t budget, RngStream& rng) {
  std::unique_ptr<Policy> policy;
  const std::int64_t num_arms = instance.num_arms();

  // UCBE budgets one warm-up sweep and takes the exploration parameter
  // a = (T - K) / H; UCBEV budgets two sweeps and scales by its multiplier:
  // a = multiplier * (T - 2K) / H. An explicit `a` overrides either.
  auto resolved_a = [&](int warmup_sweeps, double multiplier,
                        const char* which) {
    if (params.a.has_value()) return *params.a;
    if (!params.complexity.has_value()) {
      throw std::invalid_argument(
          std::string(which) +
          " needs either an explicit exploration parameter or a complexity "
          "value to derive it from");
    }
    const double usable =
        static_cast<double>(budget - warmup_sweeps * num_arms);
    return multiplier * usable / *params.complexity;
  };

  switch (params.id) {
    case PolicyId::AugUcb:
      policy = std::make_unique<AugUcbPolicy>(std::move(instance), budget,
                                              params.rho);
      break;
    case PolicyId::Apt:
      policy = std::make_unique<AptPolicy>(std::move(instance), budget,
                                           params.apt_margin);
      break;
    case PolicyId::Ucbe:
      policy = std::make_unique<UcbePolicy>(std::move(instance), budget,
                                            resolved_a(1, 1.0, "ucbe"));
      break;
    case PolicyId::Ucbev:
      policy = std::make_unique<UcbevPolicy>(
          std::move(instance), budget,
          resolved_a(2, params.ucbev_multiplier, "ucbev"),
          params.ucbev_plain_width);
      break;
    case PolicyId::Csar:
      policy = std::make_unique<CsarPolicy>(std::move(instance), budget);
      break;
    case PolicyId::Ua:
      policy = std::make_unique<UaPolicy>(std::move(instance), budget);
      break;
  }

  const std::int64_t warmup = policy->initial_pull_count();
  if (budget < warmup) {
    throw BudgetTooSmallError("budget " + std::to_string(budget) +
                              " cannot cover the " + std::to_string(warmup) +
                              " initial pulls");
  }
  policy->initial_pulls_.reserve(static_cast<std::size_t>(warmup));
  for (std::int64_t i = 0; i < warmup; ++i) {
    std::optional<PullRecord> rec = policy->step(rng);
    if (!rec.has_value()) break;  // defensive: warm-up never halts
    policy->initial_pulls_.push_back(*rec);
  }
  return policy;
}

int argmin_index(std::span<const double> values) {
  if (values.empty()) return -1;
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return best;
}

}  // namespace tbp
