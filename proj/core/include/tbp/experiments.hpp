#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tbp/arm.hpp"
#include "tbp/policy.hpp"
#include "tbp/rng.hpp"

namespace tbp {

// How the per-arm reward variances of a scenario are produced: the first
// `fixed` entries verbatim, every remaining arm drawn once per iteration
// from Uniform[uniform_lo, uniform_hi].
struct VarianceModel {
  std::vector<double> fixed;
  double uniform_lo = 0.0;
  double uniform_hi = 0.0;
};

struct RosterEntry {
  std::string label;    // file-name-safe algorithm tag, e.g. "augucb"
  PolicyParams params;
};

// One benchmark scenario: a parameterised instance family plus the
// algorithms raced on it.
struct ExperimentSpec {
  int id = 0;
  int num_arms = 100;
  double threshold = 0.5;
  std::int64_t budget = 10000;
  std::vector<double> means;  // length num_arms
  VarianceModel variances;
  std::vector<RosterEntry> roster;
};

// The six built-in scenarios. Throws UnknownExperimentError for other ids.
ExperimentSpec experiment_spec(int id);

// Concrete instance for one iteration: random variance components are drawn
// from `rng` (one uniform per randomised arm, ascending arm order).
BanditInstance make_instance(const ExperimentSpec& spec, RngStream& rng);

// Deterministic instance with every random variance at its interval
// midpoint; used for reporting and for deriving exploration parameters.
BanditInstance template_instance(const ExperimentSpec& spec);

// Per-time-step misclassification indicator, t = 1..T: 1 while the current
// output set differs from the true one.
using ErrorSeries = std::vector<std::uint8_t>;

// Error percentage over iterations at every time step.
struct AggregateSeries {
  int experiment_id = 0;
  std::string algorithm;
  std::int64_t budget = 0;
  int iterations = 0;
  std::uint64_t base_seed = 0;
  std::vector<double> error_pct;  // length budget, values in [0, 100]
};

// Plays one policy once on a fixed instance. The stream-taking overload
// continues an existing stream (used to share instance-construction draws
// across the roster); the seed-taking one starts a fresh stream.
ErrorSeries run_single(const PolicyParams& params,
                       const BanditInstance& instance, std::int64_t budget,
                       RngStream stream);
ErrorSeries run_single(const PolicyParams& params,
                       const BanditInstance& instance, std::int64_t budget,
                       std::uint64_t seed);

// Monte-Carlo race: iteration k (0-based) runs every roster algorithm on
// the same fresh instance built from seed base_seed + k, each algorithm
// continuing from an identical copy of the post-construction stream
// (common random numbers). Aggregation is an exact count average and is
// bit-identical for any parallelism degree.
std::vector<AggregateSeries> run_batch(const ExperimentSpec& spec,
                                       int iterations,
                                       std::uint64_t base_seed,
                                       int parallelism);

}  // namespace tbp
