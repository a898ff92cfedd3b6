#pragma once

#include <vector>

#include "ovs/linalg.hpp"
#include "ovs/tolerance.hpp"

namespace ovs {

enum class LpSense { Minimize, Maximize };
enum class RowKind { LessEqual, GreaterEqual, Equal };
enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(LpStatus s);

/// optimize c^T x  s.t.  A x (<=|>=|=) b,  x_j >= 0 unless free_variable[j].
struct LPProblem {
  Vector objective;
  LpSense sense = LpSense::Minimize;
  DenseMatrix constraints;
  std::vector<RowKind> kinds;
  Vector rhs;
  std::vector<bool> free_variable;  // empty means every variable is nonnegative

  std::size_t num_variables() const { return objective.size(); }
  std::size_t num_rows() const { return rhs.size(); }
  void validate() const;
};

struct LPResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  Vector solution;  // primal x
  Vector dual;      // one multiplier per row (Lagrangian sign convention of certify_lp)
  Vector ray;       // improving direction when unbounded
  int iterations = 0;
};

/// Dense two-phase tableau simplex with Bland's rule.
LPResult solve_lp(const LPProblem& problem, const TolerancePolicy& tol = {});

/// Checks an optimal result: primal feasibility, dual feasibility and zero duality gap.
bool certify_lp(const LPProblem& problem, const LPResult& result, double tol);

}  // namespace ovs
