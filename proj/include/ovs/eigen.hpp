#pragma once

#include "ovs/linalg.hpp"

namespace ovs {

/// Eigenpairs of a real symmetric matrix, eigenvalues ascending.
/// Column k of `vectors` is the unit eigenvector for `values[k]`.
struct SymmetricEigen {
  Vector values;
  DenseMatrix vectors;
  int sweeps = 0;
};

/// Cyclic Jacobi iteration. Input must be square; only the upper triangle is read.
SymmetricEigen jacobi_eigen(const DenseMatrix& a, int max_sweeps = 100);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const DenseMatrix& a);

/// V diag(f(values)) V^T.
DenseMatrix spectral_apply(const SymmetricEigen& e, double (*f)(double));

bool is_symmetric(const DenseMatrix& a, double tol);

}  // namespace ovs
