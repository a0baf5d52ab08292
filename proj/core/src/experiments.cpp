#include "tbp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>
#include <utility>

#include "tbp/complexity.hpp"
#include "tbp/errors.hpp"

namespace tbp {
namespace {

std::vector<double> flat_means(int num_arms, double fill) {
  return std::vector<double>(static_cast<std::size_t>(num_arms), fill);
}

RosterEntry roster_entry(PolicyId id) {
  PolicyParams params;
  params.id = id;
  return RosterEntry{to_string(id), params};
}

std::vector<RosterEntry> default_roster() {
  return {roster_entry(PolicyId::AugUcb), roster_entry(PolicyId::Apt),
          roster_entry(PolicyId::Ucbe),   roster_entry(PolicyId::Ucbev),
          roster_entry(PolicyId::Csar),   roster_entry(PolicyId::Ua)};
}

RosterEntry scaled_ucbev_entry(double multiplier, const std::string& label) {
  PolicyParams params;
  params.id = PolicyId::Ucbev;
  params.ucbev_multiplier = multiplier;
  return RosterEntry{label, params};
}

// The two variance profiles shared by the scenarios: moderate tail noise
// around the fixed head, or the low/high-contrast profile.
VarianceModel head_variances_default() {
  return VarianceModel{{0.5, 0.5, 0.5, 0.5, 0.5, 0.6, 0.6, 0.6, 0.6, 0.6},
                       0.38,
                       0.42};
}

VarianceModel head_variances_contrast() {
  return VarianceModel{{0.3, 0.3, 0.3, 0.3, 0.3, 0.8, 0.8, 0.8, 0.8, 0.8},
                       0.2,
                       0.3};
}

}  // namespace

ExperimentSpec experiment_spec(int id) {
  ExperimentSpec spec;
  spec.id = id;
  spec.means = flat_means(spec.num_arms, 0.4);
  spec.variances = head_variances_default();
  spec.roster = default_roster();

  switch (id) {
    case 1: {
      const double head[10] = {0.2,  0.25, 0.3, 0.35, 0.45,
                               0.55, 0.65, 0.7, 0.75, 0.8};
      std::copy(std::begin(head), std::end(head), spec.means.begin());
      break;
    }
    case 2: {
      // Means crowd geometrically toward the threshold from both sides.
      for (int j = 1; j <= 4; ++j) {
        spec.means[static_cast<std::size_t>(j - 1)] =
            0.4 - std::pow(0.2, j);
        spec.means[static_cast<std::size_t>(5 + j)] =
            0.6 + std::pow(0.2, 5 - j);
      }
      spec.means[4] = 0.45;
      spec.means[5] = 0.55;
      break;
    }
    case 3: {
      const double head[10] = {0.1,  0.1,  0.1, 0.35, 0.45,
                               0.55, 0.65, 0.9, 0.9,  0.9};
      std::copy(std::begin(head), std::end(head), spec.means.begin());
      break;
    }
    case 4:
    case 5:
    case 6: {
      std::fill_n(spec.means.begin(), 5, 0.45);
      std::fill_n(spec.means.begin() + 5, 5, 0.55);
      if (id >= 5) spec.variances = head_variances_contrast();
      if (id == 6) {
        spec.roster = {scaled_ucbev_entry(0.25, "ucbev_0.25"),
                       scaled_ucbev_entry(1.0, "ucbev_1"),
                       scaled_ucbev_entry(256.0, "ucbev_256"),
                       roster_entry(PolicyId::AugUcb)};
      }
      break;
    }
    default:
      throw UnknownExperimentError("unknown experiment id " +
                                   std::to_string(id));
  }
  return spec;
}

BanditInstance make_instance(const ExperimentSpec& spec, RngStream& rng) {
  BanditInstance instance;
  instance.threshold = spec.threshold;
  instance.arms.reserve(static_cast<std::size_t>(spec.num_arms));
  const std::size_t fixed = spec.variances.fixed.size();
  for (int i = 0; i < spec.num_arms; ++i) {
    const std::size_t idx = static_cast<std::size_t>(i);
    const double variance =
        idx < fixed ? spec.variances.fixed[idx]
                    : rng.uniform(spec.variances.uniform_lo,
                                  spec.variances.uniform_hi);
    instance.arms.push_back(ArmSpec::gaussian(spec.means[idx], variance));
  }
  return instance;
}

BanditInstance template_instance(const ExperimentSpec& spec) {
  BanditInstance instance;
  instance.threshold = spec.threshold;
  instance.arms.reserve(static_cast<std::size_t>(spec.num_arms));
  const std::size_t fixed = spec.variances.fixed.size();
  const double midpoint =
      0.5 * (spec.variances.uniform_lo + spec.variances.uniform_hi);
  for (int i = 0; i < spec.num_arms; ++i) {
    const std::size_t idx = static_cast<std::size_t>(i);
    const double variance =
        idx < fixed ? spec.variances.fixed[idx] : midpoint;
    instance.arms.push_back(ArmSpec::gaussian(spec.means[idx], variance));
  }
  return instance;
}

ErrorSeries run_single(const PolicyParams& params,
                       const BanditInstance& instance, std::int64_t budget,
                       RngStream stream) {
  if (instance.num_arms() < 2) {
    throw std::invalid_argument("a run needs at least two arms");
  }
  const std::vector<char> truth = true_positive_mask(instance);
  std::unique_ptr<Policy> policy =
      make_policy(params, instance, budget, stream);

  // Track the number of arms whose current classification disagrees with
  // the truth; the indicator is 1 exactly while that count is nonzero.
  // Unpulled arms start classified out.
  std::vector<char> classified(instance.arms.size(), 0);
  int mismatched = 0;
  for (char c : truth) mismatched += c != 0;

  ErrorSeries series(static_cast<std::size_t>(budget), 0);
  std::int64_t t = 0;
  auto record = [&](int arm, bool positive) {
    const char next = positive ? 1 : 0;
    const std::size_t idx = static_cast<std::size_t>(arm);
    if (classified[idx] != next) {
      mismatched += (next != truth[idx]) ? 1 : -1;
      classified[idx] = next;
    }
    series[static_cast<std::size_t>(t)] = mismatched != 0 ? 1 : 0;
    ++t;
  };

  for (const PullRecord& rec : policy->initial_pulls()) {
    record(rec.arm, rec.classified_positive);
  }
  while (t < budget) {
    const std::optional<PullRecord> rec = policy->step(stream);
    if (!rec.has_value()) break;  // halted: classification stays frozen
    record(rec->arm, rec->classified_positive);
  }
  const std::uint8_t frozen = mismatched != 0 ? 1 : 0;
  for (; t < budget; ++t) series[static_cast<std::size_t>(t)] = frozen;
  return series;
}

ErrorSeries run_single(const PolicyParams& params,
                       const BanditInstance& instance, std::int64_t budget,
                       std::uint64_t seed) {
  return run_single(params, instance, budget, RngStream(seed));
}

std::vector<AggregateSeries> run_batch(const ExperimentSpec& spec,
                                       int iterations,
                                       std::uint64_t base_seed,
                                       int parallelism) {
  if (iterations < 1) {
    throw std::invalid_argument("iteration count must be at least 1");
  }
  const int num_algos = static_cast<int>(spec.roster.size());
  const std::int64_t budget = spec.budget;

  // Exploration parameters that depend on problem hardness are derived once
  // from the deterministic template so every iteration races identical
  // configurations.
  std::vector<PolicyParams> resolved;
  resolved.reserve(spec.roster.size());
  {
    ComplexityReport tmpl;
    bool have_tmpl = false;
    for (const RosterEntry& entry : spec.roster) {
      PolicyParams params = entry.params;
      const bool needs_hardness =
          (params.id == PolicyId::Ucbe || params.id == PolicyId::Ucbev) &&
          !params.a.has_value() && !params.complexity.has_value();
      if (needs_hardness) {
        if (!have_tmpl) {
          tmpl = complexity_report(template_instance(spec));
          have_tmpl = true;
        }
        params.complexity =
            params.id == PolicyId::Ucbe ? tmpl.h1 : tmpl.h_sigma1;
      }
      resolved.push_back(params);
    }
  }

  using CountArray = std::vector<std::uint32_t>;
  auto zeroed_counts = [&] {
    return std::vector<CountArray>(
        static_cast<std::size_t>(num_algos),
        CountArray(static_cast<std::size_t>(budget), 0));
  };

  // Integer per-step miss counts commute exactly, so any partition of the
  // iterations yields bit-identical aggregates.
  auto run_block = [&](int first, int last, std::vector<CountArray>& counts) {
    for (int k = first; k < last; ++k) {
      RngStream stream(base_seed + static_cast<std::uint64_t>(k));
      const BanditInstance instance = make_instance(spec, stream);
      for (int r = 0; r < num_algos; ++r) {
        // Every algorithm continues from a copy of the same stream state.
        const ErrorSeries series =
            run_single(resolved[static_cast<std::size_t>(r)], instance,
                       budget, stream);
        CountArray& into = counts[static_cast<std::size_t>(r)];
        for (std::size_t t = 0; t < series.size(); ++t) into[t] += series[t];
      }
    }
  };

  std::vector<CountArray> totals = zeroed_counts();
  const int workers =
      std::clamp(parallelism, 1, std::max(1, iterations));
  if (workers <= 1) {
    run_block(0, iterations, totals);
  } else {
    std::vector<std::vector<CountArray>> partials(
        static_cast<std::size_t>(workers));
    std::vector<std::exception_ptr> errors(
        static_cast<std::size_t>(workers));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          auto counts = zeroed_counts();
          const int first = static_cast<int>(
              static_cast<std::int64_t>(iterations) * w / workers);
          const int last = static_cast<int>(
              static_cast<std::int64_t>(iterations) * (w + 1) / workers);
          run_block(first, last, counts);
          partials[static_cast<std::size_t>(w)] = std::move(counts);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (std::thread& th : threads) th.join();
    for (const std::exception_ptr& err : errors) {
      if (err) std::rethrow_exception(err);
    }
    for (const auto& counts : partials) {
      if (counts.empty()) continue;  // a worker that failed published nothing
      for (int r = 0; r < num_algos; ++r) {
        const CountArray& from = counts[static_cast<std::size_t>(r)];
        CountArray& into = totals[static_cast<std::size_t>(r)];
        for (std::size_t t = 0; t < from.size(); ++t) into[t] += from[t];
      }
    }
  }

  std::vector<AggregateSeries> out;
  out.reserve(spec.roster.size());
  for (int r = 0; r < num_algos; ++r) {
    AggregateSeries agg;
    agg.experiment_id = spec.id;
    agg.algorithm = spec.roster[static_cast<std::size_t>(r)].label;
    agg.budget = budget;
    agg.iterations = iterations;
    agg.base_seed = base_seed;
    agg.error_pct.resize(static_cast<std::size_t>(budget));
    const CountArray& counts = totals[static_cast<std::size_t>(r)];
    for (std::size_t t = 0; t < counts.size(); ++t) {
      agg.error_pct[t] =
          100.0 * static_cast<double>(counts[t]) / iterations;
    }
    out.push_back(std::move(agg));
  }
  return out;
}

}  // namespace tbp
