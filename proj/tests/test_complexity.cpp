#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "support/checks.hpp"
#include "tbp/complexity.hpp"
#include "tbp/experiments.hpp"
#include "tbp/rng.hpp"

using testsupport::close_rel;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Random gap/noise profile for the property checks: gaps in [0.01, 1],
// variances in (0, 1].
struct RandomProfile {
  std::vector<double> gaps;
  std::vector<double> sigmas;
};

RandomProfile random_profile(tbp::RngStream& rng, int num_arms) {
  RandomProfile p;
  for (int i = 0; i < num_arms; ++i) {
    p.gaps.push_back(rng.uniform(0.01, 1.0));
    p.sigmas.push_back(std::sqrt(rng.uniform(1e-6, 1.0)));
  }
  return p;
}

double harmonic(int k) {
  double sum = 0.0;
  for (int i = 1; i <= k; ++i) sum += 1.0 / i;
  return sum;
}

}  // namespace

TEST_CASE("gap is the absolute distance to the threshold") {
  CHECK(tbp::threshold_gap(0.2, 0.5) == 0.3);
  CHECK(tbp::threshold_gap(0.8, 0.5) == tbp::threshold_gap(0.2, 0.5));
  CHECK(tbp::threshold_gap(0.5, 0.5) == 0.0);
}

TEST_CASE("gap vector follows instance order") {
  tbp::BanditInstance instance;
  instance.threshold = 0.5;
  instance.arms = {tbp::ArmSpec::constant(0.2), tbp::ArmSpec::constant(0.9),
                   tbp::ArmSpec::constant(0.5)};
  const std::vector<double> gaps = tbp::compute_gaps(instance);
  REQUIRE(gaps.size() == 3);
  CHECK(gaps[0] == 0.3);
  CHECK(close_rel(gaps[1], 0.4, 1e-15));
  CHECK(gaps[2] == 0.0);
}

TEST_CASE("sum-form hardness on hand-checked gaps") {
  const std::vector<double> single{0.5};
  CHECK(close_rel(tbp::h1_complexity(single), 4.0, 1e-15));
  const std::vector<double> pair{0.1, 0.1};
  CHECK(close_rel(tbp::h1_complexity(pair), 200.0, 1e-13));
}

TEST_CASE("order-statistic hardness picks the binding index") {
  // Sorted gaps 0.1, 0.3: index 1 dominates (100 vs 22.2).
  const std::vector<double> spread{0.3, 0.1};
  CHECK(close_rel(tbp::h2_complexity(spread), 100.0, 1e-13));
  // Sorted gaps 0.1, 0.11: index 2 dominates (165.3 vs 100).
  const std::vector<double> close_pair{0.11, 0.1};
  CHECK(close_rel(tbp::h2_complexity(close_pair), 2.0 / (0.11 * 0.11),
                  1e-13));
  // The successive-rejects variant is the same order-statistic form.
  CHECK(tbp::h_csar2_complexity(spread) == tbp::h2_complexity(spread));
  CHECK(tbp::h_csar2_complexity(close_pair) ==
        tbp::h2_complexity(close_pair));
}

TEST_CASE("variance-adjusted squared gaps match extended-precision values") {
  CHECK(close_rel(tbp::delta_tilde_squared(0.3, 0.0), 0.07115124735378853497,
                  1e-13));
  CHECK(close_rel(tbp::delta_tilde_squared(0.1, 0.0),
                  0.013693063937629152836, 1e-13));
  CHECK(close_rel(tbp::delta_tilde_squared(0.3, std::sqrt(0.5)),
                  0.0417392377555722937, 1e-13));
  CHECK(close_rel(tbp::delta_tilde_squared(0.05, std::sqrt(0.5)),
                  0.0015795773867284276755, 1e-13));
  CHECK(close_rel(tbp::delta_tilde_squared(0.05, std::sqrt(0.6)),
                  0.0014658062532166815715, 1e-13));
  CHECK(close_rel(tbp::delta_tilde_squared(0.1, std::sqrt(0.4)),
                  0.0062556797071053757222, 1e-13));
  CHECK(tbp::delta_tilde_squared(0.0, 0.7) == 0.0);
}

TEST_CASE("noise-free variance adjustment reduces to a power law") {
  // With sigma = 0 the definition collapses to gap^1.5 * sqrt(3/16).
  for (double gap : {0.01, 0.05, 0.3, 0.8}) {
    CHECK(close_rel(tbp::delta_tilde_squared(gap, 0.0),
                    std::pow(gap, 1.5) * std::sqrt(3.0 / 16.0), 1e-13));
  }
}

TEST_CASE("variance-aware hardness on a two-arm profile") {
  const std::vector<double> gaps{0.3, 0.1};
  const std::vector<double> sigmas{std::sqrt(0.5), 0.0};
  CHECK(close_rel(tbp::h_sigma1_complexity(gaps, sigmas),
                  96.987946065194274925, 1e-13));
  CHECK(close_rel(tbp::h_sigma2_complexity(gaps, sigmas),
                  73.029674334022148461, 1e-13));
}

TEST_CASE("ten kind arms and ninety distractors: all five measures") {
  const tbp::ExperimentSpec spec = tbp::experiment_spec(4);
  const tbp::ComplexityReport report =
      tbp::complexity_report(tbp::template_instance(spec));
  CHECK(close_rel(report.h1, 13000.0, 1e-12));
  CHECK(close_rel(report.h2, 10000.0, 1e-12));
  CHECK(close_rel(report.h_csar2, 10000.0, 1e-12));
  CHECK(close_rel(report.h_sigma1, 20963.42148091715952, 1e-12));
  CHECK(close_rel(report.h_sigma2, 15985.473151129717713, 1e-12));
  CHECK_FALSE(report.zero_gap);
  REQUIRE(report.gaps.size() == 100);
  REQUIRE(report.gaps_tilde.size() == 100);
  CHECK(close_rel(report.gaps[0], 0.05, 1e-12));
  CHECK(close_rel(report.gaps[99], 0.1, 1e-12));
}

TEST_CASE("spread-out arm grid: sum and order-statistic hardness") {
  const tbp::ExperimentSpec spec = tbp::experiment_spec(1);
  const tbp::ComplexityReport report =
      tbp::complexity_report(tbp::template_instance(spec));
  // Head contributes 2 * (1/0.3^2 + ... + 1/0.05^2), tail 90 / 0.1^2.
  CHECK(close_rel(report.h1, 9993.1111111111111111, 1e-12));
  // The binding index is the last tail arm: 92 / 0.1^2.
  CHECK(close_rel(report.h2, 9200.0, 1e-12));
}

TEST_CASE("an arm exactly on the threshold makes every measure infinite") {
  tbp::BanditInstance instance;
  instance.threshold = 0.5;
  instance.arms = {tbp::ArmSpec::gaussian(0.5, 0.25),
                   tbp::ArmSpec::gaussian(0.9, 0.25)};
  const tbp::ComplexityReport report = tbp::complexity_report(instance);
  CHECK(report.zero_gap);
  CHECK(report.h1 == kInf);
  CHECK(report.h2 == kInf);
  CHECK(report.h_csar2 == kInf);
  CHECK(report.h_sigma1 == kInf);
  CHECK(report.h_sigma2 == kInf);
  CHECK(report.gaps_tilde[0] == 0.0);
  CHECK(report.gaps_tilde[1] > 0.0);
}

TEST_CASE("order-statistic forms never exceed their sum forms") {
  tbp::RngStream rng(2024);
  for (int trial = 0; trial < 400; ++trial) {
    const int k = 2 + static_cast<int>(rng.below(39));
    const RandomProfile p = random_profile(rng, k);
    const double h1 = tbp::h1_complexity(p.gaps);
    const double h2 = tbp::h2_complexity(p.gaps);
    const double hs1 = tbp::h_sigma1_complexity(p.gaps, p.sigmas);
    const double hs2 = tbp::h_sigma2_complexity(p.gaps, p.sigmas);
    REQUIRE(h2 <= h1 * (1.0 + 1e-12));
    REQUIRE(hs2 <= hs1 * (1.0 + 1e-12));
  }
}

TEST_CASE("sum forms are within a harmonic factor of the order forms") {
  // H1 <= (sum_{i=1..K} 1/i) * H2 holds for every gap profile, and the
  // harmonic number drops below ln(2K) once K reaches 5.
  tbp::RngStream rng(77);
  for (int trial = 0; trial < 400; ++trial) {
    const int k = 2 + static_cast<int>(rng.below(39));
    const RandomProfile p = random_profile(rng, k);
    const double bound = harmonic(k) * (1.0 + 1e-12);
    REQUIRE(tbp::h1_complexity(p.gaps) <=
            bound * tbp::h2_complexity(p.gaps));
    REQUIRE(tbp::h_sigma1_complexity(p.gaps, p.sigmas) <=
            bound * tbp::h_sigma2_complexity(p.gaps, p.sigmas));
  }
  for (int k = 5; k <= 64; ++k) {
    REQUIRE(harmonic(k) <= std::log(2.0 * k));
  }
}

TEST_CASE("every scenario template satisfies the hardness orderings") {
  for (int id = 1; id <= 6; ++id) {
    const tbp::ComplexityReport report =
        tbp::complexity_report(tbp::template_instance(tbp::experiment_spec(id)));
    CAPTURE(id);
    CHECK_FALSE(report.zero_gap);
    const double log2k = std::log(200.0);  // each scenario has 100 arms
    CHECK(report.h2 <= report.h1 * (1.0 + 1e-12));
    CHECK(report.h1 <= log2k * report.h2 * (1.0 + 1e-12));
    CHECK(report.h_sigma2 <= report.h_sigma1 * (1.0 + 1e-12));
    CHECK(report.h_sigma1 <= log2k * report.h_sigma2 * (1.0 + 1e-12));
  }
}
