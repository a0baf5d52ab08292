#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "support/checks.hpp"
#include "support/oracles.hpp"
#include "tbp/augucb.hpp"
#include "tbp/baselines.hpp"
#include "tbp/csar.hpp"
#include "tbp/errors.hpp"
#include "tbp/experiments.hpp"

using testsupport::close_rel;

namespace {

tbp::ArmStats stats_with(double mean, double variance, std::uint64_t n) {
  tbp::ArmStats s;
  s.n = n;
  s.mean = mean;
  s.m2 = variance * static_cast<double>(n);
  return s;
}

tbp::BanditInstance gaussian_instance(const std::vector<double>& means,
                                      double variance, double threshold) {
  tbp::BanditInstance instance;
  instance.threshold = threshold;
  for (double m : means) {
    instance.arms.push_back(tbp::ArmSpec::gaussian(m, variance));
  }
  return instance;
}

}  // namespace

// ---------------------------------------------------------------------------
// Round schedule

TEST_CASE("exploration scale for the first round, 100 arms, budget 10000") {
  // Extended-precision evaluation pins psi_0 = 3.93040367089223035...
  CHECK(close_rel(tbp::augucb_psi(10000, 100, 1.0), 3.93040367089223035,
                  1e-12));
  // Halving epsilon halves psi.
  CHECK(close_rel(tbp::augucb_psi(10000, 100, 0.5),
                  0.5 * tbp::augucb_psi(10000, 100, 1.0), 1e-15));
  CHECK(close_rel(tbp::augucb_psi(10000, 100, 0.5), 1.96520183544611517,
                  1e-12));
}

TEST_CASE("per-arm quotas for the first two rounds at the default scale") {
  const double psi0 = tbp::augucb_psi(10000, 100, 1.0);
  CHECK(tbp::augucb_round_quota(psi0, 10000, 1.0) == 73);  // ceil(72.40...)
  const double psi1 = tbp::augucb_psi(10000, 100, 0.5);
  CHECK(tbp::augucb_round_quota(psi1, 10000, 0.5) == 67);  // ceil(66.95...)
}

TEST_CASE("highest reachable round index") {
  CHECK(tbp::augucb_max_round(10000) == 5);
  CHECK(tbp::augucb_max_round(2) == -1);  // log2(2/e) < 0: no round change
  CHECK(tbp::augucb_max_round(3) == 0);
  CHECK(tbp::augucb_max_round(64) == 2);
}

TEST_CASE("confidence radius matches extended-precision evaluation") {
  // rho=1/3, psi=3.9303 (as given), eps=1, T=10^4, variance 0.5, 73 pulls.
  const tbp::ArmStats s = stats_with(0.5, 0.5, 73);
  const double radius = tbp::augucb_radius(s, 3.9303, 1.0, 1.0 / 3.0, 10000);
  CHECK(close_rel(radius, 0.248968422256285809, 1e-12));
}

TEST_CASE("confidence radius requires budget * epsilon above one") {
  const tbp::ArmStats s = stats_with(0.5, 0.5, 10);
  CHECK_THROWS_AS(tbp::augucb_radius(s, 1.0, 1.0, 1.0 / 3.0, 1),
                  tbp::NonPositiveLogArgumentError);
  CHECK_THROWS_AS(tbp::augucb_radius(s, 1.0, 0.25, 1.0 / 3.0, 4),
                  tbp::NonPositiveLogArgumentError);
}

// ---------------------------------------------------------------------------
// Selection and elimination

TEST_CASE("selection takes the lowest index on a tie") {
  const std::vector<double> means{0.6, 0.6};
  const std::vector<double> radii{0.05, 0.05};
  const std::vector<char> active{1, 1};
  CHECK(tbp::augucb_select(means, radii, active, 0.5) == 0);
}

TEST_CASE("selection favors the arm nearest the threshold at equal radius") {
  // |mean - tau| = 0.01 vs 0.3, both radius 0.05: the near arm wins.
  const std::vector<double> means{0.51, 0.8};
  const std::vector<double> radii{0.05, 0.05};
  const std::vector<char> active{1, 1};
  CHECK(tbp::augucb_select(means, radii, active, 0.5) == 0);
}

TEST_CASE("selection lets a wide radius beat a smaller distance") {
  // |mean - tau| 0.2 with radius 0.12 scores -0.04; 0.05 with 0.01 scores
  // 0.03: the uncertain arm wins despite the larger distance.
  const std::vector<double> means{0.7, 0.55};
  const std::vector<double> radii{0.12, 0.01};
  const std::vector<char> active{1, 1};
  CHECK(tbp::augucb_select(means, radii, active, 0.5) == 0);
}

TEST_CASE("selection skips inactive arms and rejects an empty set") {
  const std::vector<double> means{0.51, 0.8};
  const std::vector<double> radii{0.05, 0.05};
  const std::vector<char> only_second{0, 1};
  CHECK(tbp::augucb_select(means, radii, only_second, 0.5) == 1);
  const std::vector<char> none{0, 0};
  CHECK_THROWS_AS(tbp::augucb_select(means, radii, none, 0.5),
                  tbp::EmptyActiveSetError);
}

TEST_CASE("elimination outcomes at the tabulated points") {
  using Outcome = tbp::EliminationOutcome;
  CHECK(tbp::augucb_eliminate_check(0.3, 0.05, 0.5) == Outcome::RemovedBelow);
  CHECK(tbp::augucb_eliminate_check(0.9, 0.1, 0.5) == Outcome::RemovedAbove);
  CHECK(tbp::augucb_eliminate_check(0.55, 0.05, 0.5) == Outcome::Retained);
}

TEST_CASE("elimination inequalities are strict at the boundary") {
  using Outcome = tbp::EliminationOutcome;
  // mean + s == tau - s exactly: not confidently below.
  CHECK(tbp::augucb_eliminate_check(0.25, 0.125, 0.5) == Outcome::Retained);
  // mean - s == tau + s exactly: not confidently above.
  CHECK(tbp::augucb_eliminate_check(0.75, 0.125, 0.5) == Outcome::Retained);
}

// ---------------------------------------------------------------------------
// Full policy behavior

TEST_CASE("policy initialization pins the published schedule") {
  const tbp::ExperimentSpec spec = tbp::experiment_spec(4);
  tbp::AugUcbPolicy policy(tbp::template_instance(spec), 10000, 1.0 / 3.0);
  CHECK(policy.round() == 0);
  CHECK(policy.epsilon() == 1.0);
  CHECK(close_rel(policy.psi(), 3.93040367089223035, 1e-12));
  CHECK(policy.round_quota() == 73);
  CHECK(policy.reset_at() == 7300);
  CHECK(policy.max_round() == 5);
  CHECK(policy.initial_pull_count() == 100);
}

TEST_CASE("round advances once the pull count reaches the reset point") {
  tbp::RngStream rng(7);
  // Narrow gaps and real noise: no arm is eliminated within the first
  // round, so the reset happens with all 100 arms still active.
  std::vector<double> means(100, 0.45);
  for (int i = 50; i < 100; ++i) means[static_cast<std::size_t>(i)] = 0.55;
  tbp::PolicyParams params;
  params.id = tbp::PolicyId::AugUcb;
  auto policy =
      tbp::make_policy(params, gaussian_instance(means, 0.5, 0.5), 10000, rng);
  auto* augucb = dynamic_cast<tbp::AugUcbPolicy*>(policy.get());
  REQUIRE(augucb != nullptr);

  while (policy->time() < 7300) policy->step(rng);
  REQUIRE(augucb->active_set() == std::vector<char>(100, 1));
  CHECK(augucb->round() == 1);
  CHECK(augucb->epsilon() == 0.5);
  CHECK(close_rel(augucb->psi(), 1.96520183544611517, 1e-12));
  CHECK(augucb->round_quota() == 67);
  CHECK(augucb->reset_at() == 7300 + 100 * 67);

  // One step earlier the policy was still in the opening round.
  tbp::RngStream rng2(7);
  auto policy2 =
      tbp::make_policy(params, gaussian_instance(means, 0.5, 0.5), 10000,
                       rng2);
  auto* augucb2 = dynamic_cast<tbp::AugUcbPolicy*>(policy2.get());
  while (policy2->time() < 7299) policy2->step(rng2);
  CHECK(augucb2->round() == 0);
}

TEST_CASE("policy halts once every arm is eliminated") {
  tbp::RngStream rng(3);
  tbp::PolicyParams params;
  params.id = tbp::PolicyId::AugUcb;
  tbp::BanditInstance instance;
  instance.threshold = 0.5;
  instance.arms = {tbp::ArmSpec::constant(0.0), tbp::ArmSpec::constant(1.0)};
  auto policy = tbp::make_policy(params, instance, 200, rng);
  auto* augucb = dynamic_cast<tbp::AugUcbPolicy*>(policy.get());

  while (!policy->halted()) {
    REQUIRE(policy->time() < 200);  // must halt well before the budget
    policy->step(rng);
  }
  CHECK(augucb->active_set() == std::vector<char>{0, 0});
  CHECK(policy->classification() == std::vector<char>{0, 1});
  // Halted: further steps are no-ops, not errors.
  CHECK_FALSE(policy->step(rng).has_value());
}

TEST_CASE("rounds stop advancing beyond the cap") {
  tbp::RngStream rng(5);
  tbp::PolicyParams params;
  params.id = tbp::PolicyId::AugUcb;
  // Both arms sit exactly on the threshold: never eliminated, so the round
  // index climbs until it passes the cap and then stays put.
  tbp::BanditInstance instance;
  instance.threshold = 0.5;
  instance.arms = {tbp::ArmSpec::constant(0.5), tbp::ArmSpec::constant(0.5)};
  auto policy = tbp::make_policy(params, instance, 64, rng);
  auto* augucb = dynamic_cast<tbp::AugUcbPolicy*>(policy.get());
  REQUIRE(augucb->max_round() == 2);

  while (policy->time() < 64) policy->step(rng);
  CHECK(augucb->round() == 3);  // one past the cap, then frozen
  CHECK(augucb->active_set() == std::vector<char>{1, 1});
  CHECK_THROWS_AS(policy->step(rng), tbp::BudgetExhaustedError);
}

// ---------------------------------------------------------------------------
// Baseline index rules

TEST_CASE("margin rule pulls the less-sampled arm at equal distance") {
  const std::vector<tbp::ArmStats> stats{stats_with(0.65, 0.1, 4),
                                         stats_with(0.35, 0.1, 1)};
  CHECK(tbp::apt_select(stats, 0.5, 0.05) == 1);
}

TEST_CASE("margin rule breaks exact ties toward the lowest index") {
  const std::vector<tbp::ArmStats> stats{stats_with(0.6, 0.1, 3),
                                         stats_with(0.6, 0.1, 3)};
  CHECK(tbp::apt_select(stats, 0.5, 0.05) == 0);
}

TEST_CASE("exploration bonus can outweigh a large distance") {
  // a=100: scores 0.6 - sqrt(25) = -4.4 vs 0.1 - sqrt(1) = -0.9.
  const std::vector<tbp::ArmStats> stats{stats_with(1.1, 0.1, 4),
                                         stats_with(0.6, 0.1, 100)};
  CHECK(tbp::ucbe_select(stats, 0.5, 100.0) == 0);
}

TEST_CASE("variance-adaptive width matches the printed formula") {
  const tbp::ArmStats s = stats_with(0.5, 0.5, 4);
  CHECK(close_rel(tbp::ucbev_width(s, 300.0, false), 183.660254037844386,
                  1e-12));
  CHECK(close_rel(tbp::ucbev_width(s, 300.0, true),
                  std::sqrt(300.0 / 4.0), 1e-15));
}

TEST_CASE("variance-aware selection prefers the high-variance arm") {
  // Equal distance and pulls; only the variance differs.
  const std::vector<tbp::ArmStats> stats{stats_with(0.6, 0.01, 10),
                                         stats_with(0.4, 0.9, 10)};
  CHECK(tbp::ucbev_select(stats, 0.5, 2.0, false) == 1);
  // With the plain width the tie goes to the first arm.
  CHECK(tbp::ucbev_select(stats, 0.5, 2.0, true) == 0);
}

TEST_CASE("uniform choice covers all arms and handles a single arm") {
  tbp::RngStream rng(11);
  CHECK(tbp::ua_select(1, rng) == 0);
  std::vector<int> counts(4, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const int arm = tbp::ua_select(4, rng);
    REQUIRE(arm >= 0);
    REQUIRE(arm < 4);
    ++counts[static_cast<std::size_t>(arm)];
  }
  for (int c : counts) {
    CHECK(std::fabs(static_cast<double>(c) / n - 0.25) < 0.01);
  }
}

TEST_CASE("two-sweep warm-up gives the variance estimate two samples") {
  tbp::RngStream rng(13);
  tbp::PolicyParams params;
  params.id = tbp::PolicyId::Ucbev;
  params.a = 1.0;
  auto policy = tbp::make_policy(
      params, gaussian_instance({0.3, 0.4, 0.7}, 0.2, 0.5), 100, rng);
  REQUIRE(policy->initial_pulls().size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(policy->initial_pulls()[static_cast<std::size_t>(i)].arm == i % 3);
  }
  for (const tbp::ArmStats& s : policy->stats()) CHECK(s.n == 2);
}

// ---------------------------------------------------------------------------
// Successive rejects

TEST_CASE("phase quotas reproduce the worked schedules") {
  CHECK(tbp::csar_phase_lengths(13, 3) ==
        std::vector<std::int64_t>{3, 4});
  // Two arms: a single phase of ceil((T-2)/2) pulls per arm.
  CHECK(tbp::csar_phase_lengths(10, 2) == std::vector<std::int64_t>{4});
  CHECK(tbp::csar_phase_lengths(11, 2) == std::vector<std::int64_t>{5});
}

TEST_CASE("phase quotas validate their inputs") {
  CHECK_THROWS_AS(tbp::csar_phase_lengths(3, 3), tbp::BudgetTooSmallError);
  CHECK_THROWS_AS(tbp::csar_phase_lengths(100, 1), std::invalid_argument);
}

TEST_CASE("rejection removes the arm farthest from the threshold") {
  const std::vector<tbp::ArmStats> stats{stats_with(0.9, 0.1, 3),
                                         stats_with(0.6, 0.1, 3),
                                         stats_with(0.3, 0.1, 3)};
  const std::vector<char> all{1, 1, 1};
  CHECK(tbp::csar_reject(stats, all, 0.5) == 0);
  const std::vector<char> tail{0, 1, 1};
  CHECK(tbp::csar_reject(stats, tail, 0.5) == 2);
  const std::vector<char> none{0, 0, 0};
  CHECK_THROWS_AS(tbp::csar_reject(stats, none, 0.5),
                  tbp::EmptyActiveSetError);
}

TEST_CASE("rejection breaks ties toward the lowest index") {
  const std::vector<tbp::ArmStats> stats{stats_with(0.7, 0.1, 3),
                                         stats_with(0.3, 0.1, 3)};
  const std::vector<char> all{1, 1};
  CHECK(tbp::csar_reject(stats, all, 0.5) == 0);
}

TEST_CASE("phases sweep in ascending order and halt after the last one") {
  tbp::RngStream rng(17);
  tbp::PolicyParams params;
  params.id = tbp::PolicyId::Csar;
  tbp::BanditInstance instance;
  instance.threshold = 0.5;
  instance.arms = {tbp::ArmSpec::constant(0.1), tbp::ArmSpec::constant(0.5),
                   tbp::ArmSpec::constant(0.6)};
  auto policy = tbp::make_policy(params, instance, 13, rng);
  auto* csar = dynamic_cast<tbp::CsarPolicy*>(policy.get());
  REQUIRE(csar->quotas() == std::vector<std::int64_t>{3, 4});

  // Phase 1 tops all three arms up to 3 pulls; arm 0 (distance 0.4) is then
  // rejected. Phase 2 tops the survivors up to 4; arm 2 (distance 0.1) goes.
  const std::vector<int> expected{0, 1, 2, 0, 1, 2, 0, 1, 2, 1, 2};
  for (int arm : expected) {
    const auto rec = policy->step(rng);
    REQUIRE(rec.has_value());
    CHECK(rec->arm == arm);
  }
  CHECK_FALSE(policy->step(rng).has_value());
  CHECK(policy->halted());
  CHECK(policy->time() == 11);
  CHECK(csar->active_set() == std::vector<char>{0, 1, 0});
  CHECK(policy->classification() == std::vector<char>{0, 1, 1});
}

TEST_CASE("a zero-length phase cascades straight to the next rejection") {
  // T=7, K=3: log_bar = 4/3, quotas are ceil(3/4) = 1 and ceil(3/2) = 2.
  CHECK(tbp::csar_phase_lengths(7, 3) == std::vector<std::int64_t>{1, 2});
  // T=5, K=3: quotas ceil(1.5/4)=1, ceil(1.5/2)=1 - phase 2 adds nothing,
  // so its rejection follows the phase-1 rejection with no pull between.
  CHECK(tbp::csar_phase_lengths(5, 3) == std::vector<std::int64_t>{1, 1});
  tbp::RngStream rng(19);
  tbp::PolicyParams params;
  params.id = tbp::PolicyId::Csar;
  tbp::BanditInstance instance;
  instance.threshold = 0.5;
  instance.arms = {tbp::ArmSpec::constant(0.1), tbp::ArmSpec::constant(0.5),
                   tbp::ArmSpec::constant(0.6)};
  auto policy = tbp::make_policy(params, instance, 5, rng);
  for (int arm : {0, 1, 2}) {
    const auto rec = policy->step(rng);
    REQUIRE(rec.has_value());
    CHECK(rec->arm == arm);
  }
  CHECK_FALSE(policy->step(rng).has_value());
  CHECK(policy->time() == 3);
}
