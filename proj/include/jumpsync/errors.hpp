#pragma once

#include <stdexcept>
#include <string>

namespace jumpsync {

// Numeric failures map to CLI exit code 2; std::invalid_argument (validation)
// maps to exit code 1.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StabilityViolation : NumericError {
  using NumericError::NumericError;
};

struct MassLeak : NumericError {
  using NumericError::NumericError;
};

struct NonConvergence : NumericError {
  using NumericError::NumericError;
};

struct UnboundedSpeed : NumericError {
  using NumericError::NumericError;
};

struct Phi0TooLarge : NumericError {
  using NumericError::NumericError;
};

struct WindowTooShort : NumericError {
  using NumericError::NumericError;
};

}  // namespace jumpsync
