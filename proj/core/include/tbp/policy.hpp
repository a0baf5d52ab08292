#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tbp/arm.hpp"
#include "tbp/rng.hpp"
#include "tbp/stats.hpp"

namespace tbp {

enum class PolicyId { AugUcb, Apt, Ucbe, Ucbev, Csar, Ua };

std::string to_string(PolicyId id);
PolicyId parse_policy_id(const std::string& name);  // throws std::invalid_argument

// Knobs shared by the factory. Fields that do not apply to the chosen policy
// are ignored.
struct PolicyParams {
  PolicyId id = PolicyId::AugUcb;

  // AugUCB exploration scale.
  double rho = 1.0 / 3.0;

  // APT margin of indifference around the threshold.
  double apt_margin = 0.05;

  // UCBE / UCBEV exploration parameter. When unset it is derived from
  // `complexity`: a = (T - K) / complexity for UCBE and
  // a = ucbev_multiplier * (T - 2K) / complexity for UCBEV.
  std::optional<double> a;

  // Problem hardness used to derive `a` when `a` itself is unset
  // (UCBE expects the gap-only hardness, UCBEV the variance-aware one).
  std::optional<double> complexity;

  // Scales the derived UCBEV exploration parameter.
  double ucbev_multiplier = 1.0;

  // Use the variance-free confidence width sqrt(a / n) inside UCBEV instead
  // of the variance-adaptive one.
  bool ucbev_plain_width = false;
};

// What one call to Policy::step did.
struct PullRecord {
  int arm = -1;
  bool classified_positive = false;  // updated estimate >= tau after the pull
};

// Sequential thresholding policy over a fixed budget. Construction performs
// no sampling; make_policy runs the policy-specific warm-up so that a fresh
// object already has its initial pulls recorded and counted against t.
class Policy {
 public:
  virtual ~Policy() = default;

  // Plays one pull: picks an arm, samples its reward, updates the running
  // estimate and the arm's stored classification. Returns std::nullopt once
  // the policy has halted (it keeps its classification frozen thereafter).
  // Throws BudgetExhaustedError when called with t >= T and not halted.
  std::optional<PullRecord> step(RngStream& rng);

  const BanditInstance& instance() const { return instance_; }
  std::int64_t budget() const { return budget_; }
  std::int64_t time() const { return t_; }
  bool halted() const { return halted_; }

  const std::vector<ArmStats>& stats() const { return stats_; }

  // Current output set as a mask: classification()[i] != 0 iff the last
  // estimate of arm i was >= tau. Arms never pulled are classified out.
  const std::vector<char>& classification() const { return classified_; }

  // Pulls played by the warm-up inside make_policy, in play order.
  std::span<const PullRecord> initial_pulls() const { return initial_pulls_; }

  // Number of warm-up pulls the policy requires before regular stepping.
  virtual std::int64_t initial_pull_count() const = 0;

 protected:
  Policy(BanditInstance instance, std::int64_t budget);

  // Chooses the next arm, or std::nullopt to halt. Called with t < T.
  virtual std::optional<int> select_arm(RngStream& rng) = 0;

  // Policy bookkeeping after the pull at the (already advanced) time t_.
  virtual void after_pull(int arm) = 0;

  BanditInstance instance_;
  std::int64_t budget_ = 0;
  std::int64_t t_ = 0;
  std::vector<ArmStats> stats_;
  std::vector<char> classified_;
  bool halted_ = false;

 private:
  friend std::unique_ptr<Policy> make_policy(const PolicyParams&,
                                             BanditInstance, std::int64_t,
                                             RngStream&);
  std::vector<PullRecord> initial_pulls_;
};

// Builds the policy, validates the budget against its warm-up length
// (BudgetTooSmallError otherwise), and plays the warm-up pulls.
std::unique_ptr<Policy> make_policy(const PolicyParams& params,
                                    BanditInstance instance,
                                    std::int64_t budget, RngStream& rng);

// Index of the smallest element; first index wins ties. Empty span -> -1.
int argmin_index(std::span<const double> values);

}  // namespace tbp
