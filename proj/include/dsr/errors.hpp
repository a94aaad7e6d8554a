#pragma once

#include <stdexcept>
#include <string>

namespace dsr {

// Exit-code contract of the CLI: 2 validation, 3 infeasible, 4 construction.

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Randomized construction/repair ran out of retries (field too small).
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dsr
