#include "tbp/augucb.hpp"

#include <cmath>
#include <limits>

#include "tbp/errors.hpp"

namespace tbp {
namespace {

// Shared radius kernel; callers supply ln(T * eps) so the policy's hot loop
// can reuse the per-round value.
inline double radius_from_log(const ArmStats& stats, double psi, double rho,
                              double log_t_eps) {
  return std::sqrt(rho * psi * (stats.variance() + 1.0) * log_t_eps /
                   (4.0 * static_cast<double>(stats.n)));
}

// Clamps a non-negative double to the int64 range.
inline std::int64_t saturate_to_int64(double x) {
  constexpr double kMax = 9.2233720368547748e18;  // just below int64 max
  if (!(x > 0.0)) return 0;
  if (x >= kMax) return std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(x);
}

}  // namespace

double augucb_psi(std::int64_t budget, int num_arms, double epsilon) {
  const double k = static_cast<double>(num_arms);
  const double log_term = std::log((3.0 / 16.0) * k * std::log(k));
  return static_cast<double>(budget) * epsilon /
         (128.0 * log_term * log_term);
}

std::int64_t augucb_round_quota(double psi, std::int64_t budget,
                                double epsilon) {
  const double raw =
      2.0 * psi * std::log(static_cast<double>(budget) * epsilon) / epsilon;
  return saturate_to_int64(std::ceil(raw));
}

int augucb_max_round(std::int64_t budget) {
  const double e = std::exp(1.0);
  return static_cast<int>(
      std::floor(0.5 * std::log2(static_cast<double>(budget) / e)));
}

double augucb_radius(const ArmStats& stats, double psi, double epsilon,
                     double rho, std::int64_t budget) {
  const double t_eps = static_cast<double>(budget) * epsilon;
  if (!(t_eps > 1.0)) {
    throw NonPositiveLogArgumentError(
        "confidence radius needs budget * epsilon > 1");
  }
  return radius_from_log(stats, psi, rho, std::log(t_eps));
}

int augucb_select(std::span<const double> means,
                  std::span<const double> radii, std::span<const char> active,
                  double threshold) {
  int best = -1;
  double best_score = 0.0;
  for (int i = 0; i < static_cast<int>(means.size()); ++i) {
    if (!active[i]) continue;
    const double score = std::abs(means[i] - threshold) - 2.0 * radii[i];
    if (best < 0 || score < best_score) {
      best = i;
      best_score = score;
    }
  }
  if (best < 0) throw EmptyActiveSetError("no active arm to select from");
  return best;
}

EliminationOutcome augucb_eliminate_check(double mean, double radius,
                                          double threshold) {
  if (mean + radius < threshold - radius) return EliminationOutcome::RemovedBelow;
  if (mean - radius > threshold + radius) return EliminationOutcome::RemovedAbove;
  return EliminationOutcome::Retained;
}

AugUcbPolicy::AugUcbPolicy(BanditInstance instance, std::int64_t budget,
                           double rho)
    : Policy(std::move(instance), budget),
      rho_(rho),
      active_(instance_.arms.size(), 1),
      active_count_(instance_.num_arms()),
      means_(instance_.arms.size(), 0.0),
      radii_(instance_.arms.size(), 0.0) {
  max_round_ = augucb_max_round(budget_);
  apply_round_parameters();
  // N_0 counts the warm-up: every arm owes ell_0 pulls from the start.
  reset_at_ = saturate_to_int64(static_cast<double>(instance_.num_arms()) *
                                static_cast<double>(ell_));
}

std::int64_t AugUcbPolicy::initial_pull_count() const {
  return instance_.num_arms();
}

void AugUcbPolicy::apply_round_parameters() {
  epsilon_ = std::ldexp(1.0, -m_);
  psi_ = augucb_psi(budget_, instance_.num_arms(), epsilon_);
  ell_ = augucb_round_quota(psi_, budget_, epsilon_);
  log_t_eps_ = std::log(static_cast<double>(budget_) * epsilon_);
  sweep_all_ = true;  // new radii: every arm must be re-checked
}

std::optional<int> AugUcbPolicy::select_arm(RngStream&) {
  const int num_arms = instance_.num_arms();
  if (t_ < num_arms) return static_cast<int>(t_);  // one pass over all arms
  if (active_count_ == 0) return std::nullopt;

  for (int i = 0; i < num_arms; ++i) {
    if (!active_[i]) continue;
    means_[i] = stats_[i].mean;
    radii_[i] = radius_from_log(stats_[i], psi_, rho_, log_t_eps_);
  }
  return augucb_select(means_, radii_, active_, instance_.threshold);
}

void AugUcbPolicy::after_pull(int arm) {
  const int num_arms = instance_.num_arms();
  if (t_ <= num_arms) return;  // no bookkeeping during the initial pass

  // Elimination. Only arms whose radius could have changed need re-checking:
  // the arm just pulled, or everyone right after a round change.
  auto check = [&](int i) {
    const double s = radius_from_log(stats_[i], psi_, rho_, log_t_eps_);
    const EliminationOutcome out =
        augucb_eliminate_check(stats_[i].mean, s, instance_.threshold);
    if (out != EliminationOutcome::Retained) {
      active_[i] = 0;
      --active_count_;
    }
  };
  if (sweep_all_) {
    for (int i = 0; i < num_arms; ++i) {
      if (active_[i]) check(i);
    }
    sweep_all_ = false;
  } else if (active_[arm]) {
    check(arm);
  }

  // Round change: at most one per step.
  if (t_ >= reset_at_ && m_ <= max_round_) {
    ++m_;
    apply_round_parameters();
    const double next =
        static_cast<double>(t_) +
        static_cast<double>(active_count_) * static_cast<double>(ell_);
    reset_at_ = saturate_to_int64(next);
  }
}

}  // namespace tbp
