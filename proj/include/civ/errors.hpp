#pragma once

#include <stdexcept>
#include <string>

namespace civ {

/// Operands live in spaces of different dimension.
struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A root system (or other structure) could not be built from the inputs.
struct construction_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Caller violated a documented precondition.
struct precondition_error : std::logic_error {
  using std::logic_error::logic_error;
};

/// Elements belong to different owning systems.
struct system_mismatch : std::logic_error {
  using std::logic_error::logic_error;
};

/// Element ceiling exceeded during a closure or enumeration.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A vector that was required to lie in the coroot lattice does not.
struct lattice_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// Internal cross-check failed. Indicates a bug, never bad input.
struct consistency_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace civ
