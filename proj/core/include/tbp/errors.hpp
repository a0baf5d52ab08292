#pragma once

#include <stdexcept>

namespace tbp {

// Budget too small to cover a policy's mandatory initialization pulls.
class BudgetTooSmallError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A policy step was requested with the budget already spent.
class BudgetExhaustedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Selection requested over an empty active set (callers normally halt
// sampling instead of reaching this).
class EmptyActiveSetError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A schedule log argument was not positive, i.e. T * eps_m <= 1; signals a
// misconfigured budget / round schedule.
class NonPositiveLogArgumentError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Experiment id outside 1..6.
class UnknownExperimentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace tbp
