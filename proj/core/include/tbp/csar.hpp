#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tbp/policy.hpp"
#include "tbp/stats.hpp"

namespace tbp {

// Cumulative per-arm pull targets n_1 <= n_2 <= ... <= n_{K-1} for the K-1
// rejection phases:
//   n_m = ceil( (1 / log_bar(K)) * (T - K) / (K + 1 - m) ),
//   log_bar(K) = 1/2 + sum_{i=2..K} 1/i.
// Requires T > K and K >= 2.
std::vector<std::int64_t> csar_phase_lengths(std::int64_t budget,
                                             int num_arms);

// Arm to reject at the end of a phase: the active arm with the largest
// |mean - tau| (its classification is the most settled). Lowest index wins
// ties. Throws EmptyActiveSetError when no arm is active.
int csar_reject(std::span<const ArmStats> stats, std::span<const char> active,
                double threshold);

// Successive-rejects policy for thresholding: K-1 phases, each topping every
// active arm up to the phase's cumulative quota by round-robin sweeps in
// ascending index order, then permanently rejecting the most settled arm.
// Halts after the last phase (one arm left) even if budget remains.
class CsarPolicy final : public Policy {
 public:
  CsarPolicy(BanditInstance instance, std::int64_t budget);

  std::int64_t initial_pull_count() const override;  // none: phases pull

  // Completed-phase count; also the index (1-based) of the phase in play.
  int phase() const { return phase_; }
  const std::vector<std::int64_t>& quotas() const { return quotas_; }
  const std::vector<char>& active_set() const { return active_; }

 protected:
  std::optional<int> select_arm(RngStream& rng) override;
  void after_pull(int arm) override;

 private:
  std::vector<std::int64_t> quotas_;
  std::vector<char> active_;
  int active_count_ = 0;
  int phase_ = 0;    // number of phases fully processed
  int pos_ = 0;      // next arm index to consider within the sweep
  std::int64_t pulls_this_phase_ = 0;
  std::int64_t phase_target_ = 0;  // pulls the current phase must play
};

}  // namespace tbp
