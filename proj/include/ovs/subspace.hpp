#pragma once

#include <vector>

#include "ovs/linalg.hpp"
#include "ovs/tolerance.hpp"

namespace ovs {

/// Linear subspace of R^n held as an orthonormal basis (possibly empty).
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  bool is_zero() const noexcept { return basis_.empty(); }
  const std::vector<Vector>& basis() const noexcept { return basis_; }

  /// Orthogonal projection onto the subspace.
  Vector project(const Vector& x) const;
  /// Orthonormal basis of the orthogonal complement.
  std::vector<Vector> complement_basis(double tol) const;
  bool contains(const Vector& x, double tol) const;

  static Subspace full(std::size_t n);

 private:
  friend Subspace orthonormalize(const std::vector<Vector>&, std::size_t, const TolerancePolicy&);
  std::size_t ambient_dim_;
  std::vector<Vector> basis_;
};

/// Orthonormal basis for span(vectors); near-zero residuals are dropped.
Subspace orthonormalize(const std::vector<Vector>& vectors, std::size_t ambient_dim,
                        const TolerancePolicy& tol = {});

/// Canonical coset representative of x + N: the projection of x onto the complement of N.
Vector quotient_representative(const Vector& x, const Subspace& n);

/// {x : A x = 0}.
Subspace null_space(const DenseMatrix& a, const TolerancePolicy& tol = {});

}  // namespace ovs
