#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tbp/complexity.hpp"

namespace tbp {

// A guarantee evaluated numerically. `vacuous` marks values that exceed 1
// and therefore say nothing about a probability of error; the raw value is
// kept either way (clamping is a presentation concern).
struct BoundValue {
  double value = 0.0;
  bool vacuous = false;
};

// Smallest round index m >= 0 with sqrt(rho * 2^-m) < gap / 2, i.e. the
// round whose precision first resolves this arm. Requires gap > 0, rho > 0.
int target_round(double gap, double rho);

// Per-arm round schedule the regret guarantee is evaluated against.
struct RoundIndexEntry {
  int m = 0;
  double epsilon = 1.0;  // 2^-m
  double psi = 0.0;      // round-m exploration scale for K = #gaps
};

// Throws std::domain_error if any gap is <= 0.
std::vector<RoundIndexEntry> round_index_table(std::span<const double> gaps,
                                               double rho,
                                               std::int64_t budget);

// Expected-loss guarantee 2*K*T * exp(-T / (4096 * ln(K ln K) * H_sigma2)).
BoundValue augucb_loss_bound(std::int64_t budget, int num_arms,
                             double h_sigma2);

// Expected-loss guarantees for the baseline policies:
//   UCBEV: exp(-(1/512) * (T - 2K) / H_sigma1 + ln(6KT))
//   APT:   exp(-T / (64 * H1) + 2 * ln((ln T + 1) * K))
//   CSAR:  exp(-(T - K) / (72 * ln(K) * H_csar2) + 2 * ln K)
struct BaselineLossBounds {
  BoundValue ucbev;
  BoundValue apt;
  BoundValue csar;
};

BaselineLossBounds baseline_loss_bounds(std::int64_t budget, int num_arms,
                                        double h_sigma1, double h1,
                                        double h_csar2);

// Cumulative-regret guarantee, evaluated term by term as stated:
//   arms with gap > b contribute
//     T*gap / ((3/2) T gap^2)^psi
//     + (gap + 22*gap*psi*ln((3/2) T gap^2) / gap)
//       * 4 T^{1-psi} 2^{psi-1/2} / gap^{psi-1/2};
//   arms with 0 < gap <= b contribute 4 T^{1-psi} 2^{psi-1/2} / b^{psi-1/2};
//   plus T * max{ gap_i : gap_i <= b } (0 when that set is empty).
// psi is the round-target exploration scale for K = #gaps. Each product is
// evaluated as exp of a sum of logs so huge exponents underflow cleanly to 0
// instead of producing inf * 0. Throws std::domain_error if b < sqrt(e/T)
// or any gap is negative.
double augucb_regret_bound(std::int64_t budget, std::span<const double> gaps,
                           double rho, double b);

// Everything the CLI manifest reports under "theoretical_bounds".
struct BoundsReport {
  BoundValue augucb_loss;
  BoundValue ucbev_loss;
  BoundValue apt_loss;
  BoundValue csar_loss;
  double regret = 0.0;
  double b = 0.0;
  double rho = 1.0 / 3.0;
  // Applicability of the loss guarantee as stated: satisfied-flags, not
  // errors. Violations only mean the guarantee is quoted out of its domain.
  bool k_at_least_4 = true;
  bool rho_is_one_third = true;
};

BoundsReport evaluate_bounds(const ComplexityReport& complexity,
                             std::int64_t budget, int num_arms, double rho,
                             double b);

}  // namespace tbp
