#pragma once

#include <stdexcept>
#include <string>

namespace lorenzlab {

/// Input rejected before any numerical work: malformed grids, densities that
/// break their invariants, out-of-range parameters, unreadable configs.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A time integrator detected an unrecoverable numerical condition
/// (stability violation, negative excursion, lost convexity).
class NumericalAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output could not be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lorenzlab
