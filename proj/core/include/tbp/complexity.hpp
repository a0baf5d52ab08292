#pragma once

#include <span>
#include <vector>

#include "tbp/arm.hpp"

namespace tbp {

// Distance of one arm's mean from the threshold: Delta_i = |tau - r_i|.
double threshold_gap(double mean, double threshold);
std::vector<double> compute_gaps(const BanditInstance& instance);

// Gap-only hardness H1 = sum_i Delta_i^-2. An arm sitting exactly on the
// threshold makes the problem infinitely hard: +inf.
double h1_complexity(std::span<const double> gaps);

// Order-statistic hardness H2 = max_i i * Delta_(i)^-2 with the gaps sorted
// in increasing order and i counted from 1.
double h2_complexity(std::span<const double> gaps);

// The successive-rejects variant uses the same order-statistic form.
double h_csar2_complexity(std::span<const double> gaps);

// Variance-adjusted squared gap:
//   Delta_tilde_i^2 = Delta_i^2 / (sigma_i + sqrt(sigma_i^2 + (16/3) Delta_i))
// where sigma_i is the arm's reward standard deviation. Zero gap -> 0.
double delta_tilde_squared(double gap, double sigma);

// Variance-aware hardness H_sigma,1 = sum_i 1 / Delta_tilde_i^2.
double h_sigma1_complexity(std::span<const double> gaps,
                           std::span<const double> sigmas);

// Variance-aware order-statistic hardness
//   H_sigma,2 = max_i i / Delta_tilde_(i)^2
// with the Delta_tilde values sorted in increasing order.
double h_sigma2_complexity(std::span<const double> gaps,
                           std::span<const double> sigmas);

// Everything the bound evaluators and the CLI need in one pass.
struct ComplexityReport {
  std::vector<double> gaps;
  std::vector<double> gaps_tilde;  // Delta_tilde_i^2 per arm, instance order
  double h1 = 0.0;
  double h2 = 0.0;
  double h_csar2 = 0.0;
  double h_sigma1 = 0.0;
  double h_sigma2 = 0.0;
  bool zero_gap = false;  // some arm sits exactly on the threshold
};

ComplexityReport complexity_report(const BanditInstance& instance);

}  // namespace tbp
