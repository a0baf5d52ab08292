#include "tbp/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tbp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double threshold_gap(double mean, double threshold) {
  return std::abs(threshold - mean);
}

std::vector<double> compute_gaps(const BanditInstance& instance) {
  std::vector<double> gaps(instance.arms.size());
  for (int i = 0; i < instance.num_arms(); ++i) {
    gaps[static_cast<std::size_t>(i)] =
        threshold_gap(instance.arms[static_cast<std::size_t>(i)].mean,
                      instance.threshold);
  }
  return gaps;
}

double h1_complexity(std::span<const double> gaps) {
  double sum = 0.0;
  for (double gap : gaps) {
    if (gap == 0.0) return kInf;
    sum += 1.0 / (gap * gap);
  }
  return sum;
}

double h2_complexity(std::span<const double> gaps) {
  std::vector<double> sorted(gaps.begin(), gaps.end());
  std::sort(sorted.begin(), sorted.end());
  double best = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double gap = sorted[i];
    if (gap == 0.0) return kInf;
    best = std::max(best,
                    static_cast<double>(i + 1) / (gap * gap));
  }
  return best;
}

double h_csar2_complexity(std::span<const double> gaps) {
  return h2_complexity(gaps);
}

double delta_tilde_squared(double gap, double sigma) {
  if (gap == 0.0) return 0.0;
  const double root = std::sqrt(sigma * sigma + (16.0 / 3.0) * gap);
  return gap * gap / (sigma + root);
}

double h_sigma1_complexity(std::span<const double> gaps,
                           std::span<const double> sigmas) {
  double sum = 0.0;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const double dt2 = delta_tilde_squared(gaps[i], sigmas[i]);
    if (dt2 == 0.0) return kInf;
    sum += 1.0 / dt2;
  }
  return sum;
}

double h_sigma2_complexity(std::span<const double> gaps,
                           std::span<const double> sigmas) {
  std::vector<double> dt2(gaps.size());
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    dt2[i] = delta_tilde_squared(gaps[i], sigmas[i]);
  }
  std::sort(dt2.begin(), dt2.end());
  double best = 0.0;
  for (std::size_t i = 0; i < dt2.size(); ++i) {
    if (dt2[i] == 0.0) return kInf;
    best = std::max(best, static_cast<double>(i + 1) / dt2[i]);
  }
  return best;
}

ComplexityReport complexity_report(const BanditInstance& instance) {
  ComplexityReport report;
  report.gaps = compute_gaps(instance);

  std::vector<double> sigmas(instance.arms.size());
  for (std::size_t i = 0; i < instance.arms.size(); ++i) {
    sigmas[i] = std::sqrt(instance.arms[i].variance);
  }

  report.gaps_tilde.resize(report.gaps.size());
  for (std::size_t i = 0; i < report.gaps.size(); ++i) {
    report.gaps_tilde[i] = delta_tilde_squared(report.gaps[i], sigmas[i]);
  }

  report.h1 = h1_complexity(report.gaps);
  report.h2 = h2_complexity(report.gaps);
  report.h_csar2 = h_csar2_complexity(report.gaps);
  report.h_sigma1 = h_sigma1_complexity(report.gaps, sigmas);
  report.h_sigma2 = h_sigma2_complexity(report.gaps, sigmas);
  report.zero_gap =
      std::any_of(report.gaps.begin(), report.gaps.end(),
                  [](double g) { return g == 0.0; });
  return report;
}

}  // namespace tbp
