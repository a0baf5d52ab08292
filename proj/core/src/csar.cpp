#include "tbp/csar.hpp"

#include <cmath>
#include <utility>

#include "tbp/errors.hpp"

namespace tbp {

std::vector<std::int64_t> csar_phase_lengths(std::int64_t budget,
                                             int num_arms) {
  if (num_arms < 2) {
    throw std::invalid_argument("phase schedule needs at least two arms");
  }
  if (budget <= num_arms) {
    throw BudgetTooSmallError("phase schedule needs budget > arm count");
  }
  // log_bar(K) = 1/2 + sum_{i=2..K} 1/i
  double log_bar = 0.5;
  for (int i = 2; i <= num_arms; ++i) log_bar += 1.0 / static_cast<double>(i);

  const double scale =
      static_cast<double>(budget - num_arms) / log_bar;
  std::vector<std::int64_t> quotas(static_cast<std::size_t>(num_arms - 1));
  for (int m = 1; m <= num_arms - 1; ++m) {
    quotas[static_cast<std::size_t>(m - 1)] = static_cast<std::int64_t>(
        std::ceil(scale / static_cast<double>(num_arms + 1 - m)));
  }
  return quotas;
}

int csar_reject(std::span<const ArmStats> stats, std::span<const char> active,
                double threshold) {
  int best = -1;
  double best_score = 0.0;
  for (int i = 0; i < static_cast<int>(stats.size()); ++i) {
    if (!active[i]) continue;
    const double score = std::abs(stats[i].mean - threshold);
    if (best < 0 || score > best_score) {
      best = i;
      best_score = score;
    }
  }
  if (best < 0) throw EmptyActiveSetError("no active arm to reject");
  return best;
}

CsarPolicy::CsarPolicy(BanditInstance instance, std::int64_t budget)
    : Policy(std::move(instance), budget),
      quotas_(csar_phase_lengths(budget, instance_.num_arms())),
      active_(instance_.arms.size(), 1),
      active_count_(instance_.num_arms()) {
  // Phase 1 starts with every arm at zero pulls.
  phase_target_ = quotas_[0] * active_count_;
}

std::int64_t CsarPolicy::initial_pull_count() const { return 0; }

std::optional<int> CsarPolicy::select_arm(RngStream&) {
  const int num_arms = instance_.num_arms();

  // Close out any phase whose quota is already met (a zero-length phase can
  // cascade straight into the next rejection).
  while (phase_ < num_arms - 1 && pulls_this_phase_ >= phase_target_) {
    const int victim = csar_reject(stats_, active_, instance_.threshold);
    active_[victim] = 0;
    --active_count_;
    ++phase_;
    if (phase_ >= num_arms - 1) break;
    const std::int64_t prev = quotas_[static_cast<std::size_t>(phase_ - 1)];
    const std::int64_t cur = quotas_[static_cast<std::size_t>(phase_)];
    pulls_this_phase_ = 0;
    phase_target_ = (cur - prev) * active_count_;
    pos_ = 0;
  }
  if (phase_ >= num_arms - 1) return std::nullopt;  // all phases done

  while (!active_[pos_]) pos_ = (pos_ + 1) % num_arms;
  return pos_;
}

void CsarPolicy::after_pull(int arm) {
  ++pulls_this_phase_;
  pos_ = (arm + 1) % instance_.num_arms();
}

}  // namespace tbp
