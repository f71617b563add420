#pragma once

#include <stdexcept>
#include <string>

namespace adr {

// Invalid setup: bad grid, missing exact solution, malformed CLI/spec-file input.
// CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure at runtime. CLI maps this to exit code 2.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A field value became NaN/Inf.
struct NonFiniteError : NumericalError {
  using NumericalError::NumericalError;
};

// A coefficient was evaluated outside its domain (e.g. alpha(q)=1/q with q <= 0).
struct DomainError : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace adr
