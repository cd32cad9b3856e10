#pragma once

#include <stdexcept>

namespace dlmvdr {

// Invalid user-supplied configuration or input (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure: solver non-convergence, lost positive definiteness,
// violated structural invariant (CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dlmvdr
