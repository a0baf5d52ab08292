#include "tbp/baselines.hpp"

#include <cmath>
#include <utility>

namespace tbp {

int apt_select(std::span<const ArmStats> stats, double threshold,
               double margin) {
  int best = 0;
  double best_score = 0.0;
  for (int i = 0; i < static_cast<int>(stats.size()); ++i) {
    const double score =
        std::sqrt(static_cast<double>(stats[i].n)) *
        (std::abs(stats[i].mean - threshold) + margin);
    if (i == 0 || score < best_score) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

int ucbe_select(std::span<const ArmStats> stats, double threshold, double a) {
  int best = 0;
  double best_score = 0.0;
  for (int i = 0; i < static_cast<int>(stats.size()); ++i) {
    const double score = std::abs(stats[i].mean - threshold) -
                         std::sqrt(a / static_cast<double>(stats[i].n));
    if (i == 0 || score < best_score) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

double ucbev_width(const ArmStats& stats, double a, bool plain_width) {
  const double n = static_cast<double>(stats.n);
  if (plain_width) return std::sqrt(a / n);
  return std::sqrt(2.0 * a * stats.variance() / n) + 7.0 * a / (3.0 * n);
}

int ucbev_select(std::span<const ArmStats> stats, double threshold, double a,
                 bool plain_width) {
  int best = 0;
  double best_score = 0.0;
  for (int i = 0; i < static_cast<int>(stats.size()); ++i) {
    const double score = std::abs(stats[i].mean - threshold) -
                         ucbev_width(stats[i], a, plain_width);
    if (i == 0 || score < best_score) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

int ua_select(int num_arms, RngStream& rng) {
  return static_cast<int>(rng.below(static_cast<std::uint64_t>(num_arms)));
}

AptPolicy::AptPolicy(BanditInstance instance, std::int64_t budget,
                     double margin)
    : Policy(std::move(instance), budget), margin_(margin) {}

std::int64_t AptPolicy::initial_pull_count() const {
  return instance_.num_arms();
}

std::optional<int> AptPolicy::select_arm(RngStream&) {
  if (t_ < instance_.num_arms()) return static_cast<int>(t_);
  return apt_select(stats_, instance_.threshold, margin_);
}

void AptPolicy::after_pull(int) {}

UcbePolicy::UcbePolicy(BanditInstance instance, std::int64_t budget, double a)
    : Policy(std::move(instance), budget), a_(a) {}

std::int64_t UcbePolicy::initial_pull_count() const {
  return instance_.num_arms();
}

std::optional<int> UcbePolicy::select_arm(RngStream&) {
  if (t_ < instance_.num_arms()) return static_cast<int>(t_);
  return ucbe_select(stats_, instance_.threshold, a_);
}

void UcbePolicy::after_pull(int) {}

UcbevPolicy::UcbevPolicy(BanditInstance instance, std::int64_t budget,
                         double a, bool plain_width)
    : Policy(std::move(instance), budget), a_(a), plain_width_(plain_width) {}

std::int64_t UcbevPolicy::initial_pull_count() const {
  // Two passes: the variance-adaptive width needs a variance estimate.
  return 2 * static_cast<std::int64_t>(instance_.num_arms());
}

std::optional<int> UcbevPolicy::select_arm(RngStream&) {
  const std::int64_t num_arms = instance_.num_arms();
  if (t_ < 2 * num_arms) return static_cast<int>(t_ % num_arms);
  return ucbev_select(stats_, instance_.threshold, a_, plain_width_);
}

void UcbevPolicy::after_pull(int) {}

UaPolicy::UaPolicy(BanditInstance instance, std::int64_t budget)
    : Policy(std::move(instance), budget) {}

std::int64_t UaPolicy::initial_pull_count() const {
  return instance_.num_arms();
}

std::optional<int> UaPolicy::select_arm(RngStream& rng) {
  if (t_ < instance_.num_arms()) return static_cast<int>(t_);
  return ua_select(instance_.num_arms(), rng);
}

void UaPolicy::after_pull(int) {}

}  // namespace tbp
