#include "tbp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tbp/augucb.hpp"

namespace tbp {
namespace {

// sqrt(rho * 2^-m) < gap / 2, evaluated in the square-root domain so that
// extreme m underflow gracefully instead of squaring out of range.
inline bool round_resolves(int m, double gap, double rho) {
  return std::sqrt(rho) * std::exp2(-0.5 * static_cast<double>(m)) <
         gap / 2.0;
}

}  // namespace

int target_round(double gap, double rho) {
  if (!(gap > 0.0)) throw std::invalid_argument("target round needs gap > 0");
  if (!(rho > 0.0)) throw std::invalid_argument("target round needs rho > 0");

  // Closed form: the condition rearranges to 2^m > 4 rho / gap^2. Computed
  // in log space, then nudged to the exact strict-inequality boundary.
  const double log2_bound = std::log2(4.0 * rho) - 2.0 * std::log2(gap);
  int m = static_cast<int>(std::floor(log2_bound)) + 1;
  m = std::max(m, 0);
  while (m > 0 && round_resolves(m - 1, gap, rho)) --m;
  while (!round_resolves(m, gap, rho) && m < (1 << 16)) ++m;
  return m;
}

std::vector<RoundIndexEntry> round_index_table(std::span<const double> gaps,
                                               double rho,
                                               std::int64_t budget) {
  std::vector<RoundIndexEntry> table;
  table.reserve(gaps.size());
  const int num_arms = static_cast<int>(gaps.size());
  for (double gap : gaps) {
    if (!(gap > 0.0)) {
      throw std::domain_error("round schedule needs every gap > 0");
    }
    RoundIndexEntry entry;
    entry.m = target_round(gap, rho);
    entry.epsilon = std::ldexp(1.0, -entry.m);
    entry.psi = augucb_psi(budget, num_arms, entry.epsilon);
    table.push_back(entry);
  }
  return table;
}

BoundValue augucb_loss_bound(std::int64_t budget, int num_arms,
                             double h_sigma2) {
  const double t = static_cast<double>(budget);
  const double k = static_cast<double>(num_arms);
  const double exponent = -t / (4096.0 * std::log(k * std::log(k)) * h_sigma2);
  const double value = 2.0 * k * t * std::exp(exponent);
  return BoundValue{value, value > 1.0};
}

BaselineLossBounds baseline_loss_bounds(std::int64_t budget, int num_arms,
                                        double h_sigma1, double h1,
                                        double h_csar2) {
  const double t = static_cast<double>(budget);
  const double k = static_cast<double>(num_arms);
  BaselineLossBounds out;

  const double ucbev =
      std::exp(-(1.0 / 512.0) * (t - 2.0 * k) / h_sigma1 +
               std::log(6.0 * k * t));
  out.ucbev = BoundValue{ucbev, ucbev > 1.0};

  const double apt = std::exp(-t / (64.0 * h1) +
                              2.0 * std::log((std::log(t) + 1.0) * k));
  out.apt = BoundValue{apt, apt > 1.0};

  const double csar = std::exp(-(t - k) / (72.0 * std::log(k) * h_csar2) +
                               2.0 * std::log(k));
  out.csar = BoundValue{csar, csar > 1.0};

  return out;
}

double augucb_regret_bound(std::int64_t budget, std::span<const double> gaps,
                           double rho, double b) {
  const double t = static_cast<double>(budget);
  const double b_floor = std::sqrt(std::exp(1.0) / t);
  if (!(b >= b_floor)) {
    throw std::domain_error("regret bound needs b >= sqrt(e / T)");
  }
  for (double gap : gaps) {
    if (gap < 0.0) throw std::domain_error("gaps must be non-negative");
  }

  const int num_arms = static_cast<int>(gaps.size());
  const double log_t = std::log(t);
  const double log_2 = std::log(2.0);
  const double log_4 = std::log(4.0);

  double total = 0.0;
  double max_small = 0.0;  // largest gap among arms with gap <= b; empty -> 0
  for (double gap : gaps) {
    if (gap == 0.0) continue;  // counts only toward the (zero) max term

    const int m = target_round(gap, rho);
    const double eps = std::ldexp(1.0, -m);
    const double psi = augucb_psi(budget, num_arms, eps);

    if (gap > b) {
      // T * gap / ((3/2) T gap^2)^psi
      const double log_arg = std::log(1.5 * t * gap * gap);
      total += std::exp(std::log(t * gap) - psi * log_arg);

      // (gap + 22 gap psi ln((3/2) T gap^2) / gap)
      //   * 4 T^{1-psi} 2^{psi-1/2} / gap^{psi-1/2}
      const double factor = gap + 22.0 * gap * psi * log_arg / gap;
      const double log_tail = log_4 + (1.0 - psi) * log_t +
                              (psi - 0.5) * log_2 -
                              (psi - 0.5) * std::log(gap);
      total += std::exp(std::log(factor) + log_tail);
    } else {
      max_small = std::max(max_small, gap);
      // 4 T^{1-psi} 2^{psi-1/2} / b^{psi-1/2}
      const double log_term = log_4 + (1.0 - psi) * log_t +
                              (psi - 0.5) * log_2 -
                              (psi - 0.5) * std::log(b);
      total += std::exp(log_term);
    }
  }
  total += max_small * t;
  return total;
}

BoundsReport evaluate_bounds(const ComplexityReport& complexity,
                             std::int64_t budget, int num_arms, double rho,
                             double b) {
  BoundsReport report;
  report.b = b;
  report.rho = rho;
  report.k_at_least_4 = num_arms >= 4;
  report.rho_is_one_third = rho == 1.0 / 3.0;

  report.augucb_loss =
      augucb_loss_bound(budget, num_arms, complexity.h_sigma2);
  const BaselineLossBounds baselines = baseline_loss_bounds(
      budget, num_arms, complexity.h_sigma1, complexity.h1,
      complexity.h_csar2);
  report.ucbev_loss = baselines.ucbev;
  report.apt_loss = baselines.apt;
  report.csar_loss = baselines.csar;
  report.regret = augucb_regret_bound(budget, complexity.gaps, rho, b);
  return report;
}

}  // namespace tbp
