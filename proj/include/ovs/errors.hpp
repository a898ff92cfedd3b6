#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ovs {

/// Dimensions of two operands disagree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// No admissible algorithm for the requested combination of inputs.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver hit its iteration limit or lost numerical footing.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition. Carries an optional witness.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what, std::vector<double> witness = {})
      : std::invalid_argument(what), witness_(std::move(witness)) {}
  const std::vector<double>& witness() const noexcept { return witness_; }

 private:
  std::vector<double> witness_;
};

}  // namespace ovs
