#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tbp/policy.hpp"
#include "tbp/stats.hpp"

namespace tbp {

// Round-m exploration scale:
//   psi_m = T * eps_m / (128 * (ln((3/16) * K * ln K))^2).
double augucb_psi(std::int64_t budget, int num_arms, double epsilon);

// Per-arm pull quota for a round: ceil(2 * psi * ln(T * eps) / eps).
// Saturates instead of overflowing for extreme inputs.
std::int64_t augucb_round_quota(double psi, std::int64_t budget,
                                double epsilon);

// Largest round index that may be entered: floor(log2(T / e) / 2).
// May be -1 for tiny budgets (T = 2), in which case no round change happens.
int augucb_max_round(std::int64_t budget);

// Variance-adaptive confidence radius
//   s = sqrt( rho * psi * (v_hat + 1) * ln(T * eps) / (4 * n) ).
// Throws NonPositiveLogArgumentError when T * eps <= 1.
double augucb_radius(const ArmStats& stats, double psi, double epsilon,
                     double rho, std::int64_t budget);

// Among active arms, the one minimising |mean - tau| - 2 * radius;
// lowest index wins ties. Throws EmptyActiveSetError when no arm is active.
int augucb_select(std::span<const double> means,
                  std::span<const double> radii, std::span<const char> active,
                  double threshold);

enum class EliminationOutcome { Retained, RemovedBelow, RemovedAbove };

// Elimination test for one arm: confidently below the threshold when
// mean + s < tau - s, confidently above when mean - s > tau + s (both
// strict), otherwise retained.
EliminationOutcome augucb_eliminate_check(double mean, double radius,
                                          double threshold);

// Augmented-UCB policy: arms are eliminated once confidently classified,
// rounds shrink the target precision eps_m = 2^-m, and the policy halts
// early if every arm has been eliminated.
class AugUcbPolicy final : public Policy {
 public:
  AugUcbPolicy(BanditInstance instance, std::int64_t budget, double rho);

  std::int64_t initial_pull_count() const override;

  int round() const { return m_; }
  double epsilon() const { return epsilon_; }
  double psi() const { return psi_; }
  std::int64_t round_quota() const { return ell_; }
  std::int64_t reset_at() const { return reset_at_; }
  int max_round() const { return max_round_; }
  double rho() const { return rho_; }

  // Mask over arms: active_set()[i] != 0 iff arm i is still in play.
  const std::vector<char>& active_set() const { return active_; }

 protected:
  std::optional<int> select_arm(RngStream& rng) override;
  void after_pull(int arm) override;

 private:
  void apply_round_parameters();

  double rho_ = 1.0 / 3.0;
  int m_ = 0;
  int max_round_ = 0;
  double epsilon_ = 1.0;
  double psi_ = 0.0;
  std::int64_t ell_ = 0;
  std::int64_t reset_at_ = 0;  // N_m: time at/after which round m+1 begins
  double log_t_eps_ = 0.0;     // ln(T * eps_m), fixed within a round
  bool sweep_all_ = true;      // re-check every arm at the next bookkeeping
  std::vector<char> active_;
  int active_count_ = 0;

  // Scratch buffers reused across steps to avoid per-pull allocation.
  std::vector<double> means_;
  std::vector<double> radii_;
};

}  // namespace tbp
