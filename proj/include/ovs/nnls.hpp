#pragma once

#include "ovs/linalg.hpp"
#include "ovs/tolerance.hpp"

namespace ovs {

struct NnlsResult {
  Vector coefficients;  // c >= 0
  double residual_norm = 0.0;
  int iterations = 0;
};

/// min ||A c - b||_2 subject to c >= 0 (Lawson-Hanson active set).
/// Throws SolverError when the iteration limit is exceeded.
NnlsResult solve_nnls(const DenseMatrix& a, const Vector& b, const TolerancePolicy& tol = {});

/// Unconstrained least squares on the given column subset via Householder QR.
/// Returns coefficients for those columns; dependent columns get zero.
Vector least_squares_columns(const DenseMatrix& a, const std::vector<std::size_t>& columns, const Vector& b);

}  // namespace ovs
