#pragma once

#include <stdexcept>

namespace tascap {

// Iteration budgets exhausted, brackets not found, quadrature refused to
// converge. Never returned as a silent bad value.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A closed-form regime formula was evaluated outside the parameter region
// where its tail approximation produces a real value.
struct out_of_regime_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tascap
