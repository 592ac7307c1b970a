#pragma once

#include <stdexcept>
#include <string>

namespace blochmle {

/// Raised when an input violates a documented precondition or type invariant.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a numerical routine fails on input that satisfied its
/// preconditions (bracket expansion failure, non-finite intermediate, ...).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace blochmle
