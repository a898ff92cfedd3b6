#pragma once

#include <stdexcept>

namespace ovs {

/// Numerical tolerances threaded explicitly through every comparison.
struct TolerancePolicy {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  double bisection_tol = 1e-7;
  int max_iter = 10'000;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(bisection_tol > 0.0) || max_iter <= 0)
      throw std::invalid_argument("tolerance policy: all fields must be strictly positive");
  }
};

}  // namespace ovs
