#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tbp/policy.hpp"
#include "tbp/stats.hpp"

namespace tbp {

// APT's index: pull the arm minimising sqrt(n) * (|mean - tau| + margin).
// Lowest index wins ties.
int apt_select(std::span<const ArmStats> stats, double threshold,
               double margin);

// UCBE's index: pull the arm minimising |mean - tau| - sqrt(a / n).
int ucbe_select(std::span<const ArmStats> stats, double threshold, double a);

// UCBEV confidence width. Variance-adaptive by default:
//   sqrt(2 * a * v_hat / n) + 7 * a / (3 * n);
// with plain_width the variance-free sqrt(a / n) is used instead.
double ucbev_width(const ArmStats& stats, double a, bool plain_width);

// UCBEV's index: pull the arm minimising |mean - tau| - width.
int ucbev_select(std::span<const ArmStats> stats, double threshold, double a,
                 bool plain_width);

// Uniform allocation's choice: an arm drawn uniformly from {0, ..., K-1}.
int ua_select(int num_arms, RngStream& rng);

class AptPolicy final : public Policy {
 public:
  AptPolicy(BanditInstance instance, std::int64_t budget, double margin);
  std::int64_t initial_pull_count() const override;
  double margin() const { return margin_; }

 protected:
  std::optional<int> select_arm(RngStream& rng) override;
  void after_pull(int arm) override;

 private:
  double margin_ = 0.05;
};

class UcbePolicy final : public Policy {
 public:
  UcbePolicy(BanditInstance instance, std::int64_t budget, double a);
  std::int64_t initial_pull_count() const override;
  double exploration() const { return a_; }

 protected:
  std::optional<int> select_arm(RngStream& rng) override;
  void after_pull(int arm) override;

 private:
  double a_ = 0.0;
};

class UcbevPolicy final : public Policy {
 public:
  UcbevPolicy(BanditInstance instance, std::int64_t budget, double a,
              bool plain_width);
  std::int64_t initial_pull_count() const override;  // two full sweeps
  double exploration() const { return a_; }
  bool plain_width() const { return plain_width_; }

 protected:
  std::optional<int> select_arm(RngStream& rng) override;
  void after_pull(int arm) override;

 private:
  double a_ = 0.0;
  bool plain_width_ = false;
};

class UaPolicy final : public Policy {
 public:
  UaPolicy(BanditInstance instance, std::int64_t budget);
  std::int64_t initial_pull_count() const override;

 protected:
  std::optional<int> select_arm(RngStream& rng) override;
  void after_pull(int arm) override;
};

}  // namespace tbp
