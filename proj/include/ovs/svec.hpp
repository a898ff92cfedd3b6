#pragma once

#include "ovs/linalg.hpp"

namespace ovs {

/// Coordinates on symmetric n x n matrices: upper triangle, row-major,
/// off-diagonal entries scaled by sqrt(2) so the Euclidean norm is the Frobenius norm.
std::size_t svec_dim(std::size_t side) noexcept;
/// Inverse of svec_dim; throws DimensionError when m is not triangular.
std::size_t svec_side(std::size_t m);

Vector svec(const DenseMatrix& a);
DenseMatrix smat(const Vector& v);

}  // namespace ovs
