#pragma once

#include <stdexcept>
#include <string>

namespace snlab {

// NaN, degenerate linear solve, or other numerical breakdown.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested tolerance cannot be met at the current step size.
class StepSizeError : public std::runtime_error {
 public:
  StepSizeError(const std::string& what, double measured_drift)
      : std::runtime_error(what), measured_drift(measured_drift) {}
  double measured_drift;
};

// Iteration budget exhausted before the tolerance was reached.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual(residual) {}
  double residual;
};

}  // namespace snlab
