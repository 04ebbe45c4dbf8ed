#pragma once

#include <stdexcept>
#include <string>

namespace primeform {

/// Raised when a proven identity fails to hold on computed data. In the exact
/// modules this always means a bug in the filter, the oracle or the arithmetic.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

/// Raised when a request is well-formed but would exceed a configured budget
/// (sieve limit too small, Gandhi subset count above the feasibility bound).
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace primeform
