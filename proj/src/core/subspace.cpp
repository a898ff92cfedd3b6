#include "ovs/subspace.hpp"

#include <algorithm>
#include <cmath>

#include "ovs/errors.hpp"

namespace ovs {

Vector Subspace::project(const Vector& x) const {
  if (x.size() != ambient_dim_) throw DimensionError("subspace projection: dimension mismatch");
  Vector p(ambient_dim_);
  for (const Vector& b : basis_) p += dot(b, x) * b;
  return p;
}

std::vector<Vector> Subspace::complement_basis(double tol) const {
  std::vector<Vector> candidates = basis_;
  for (std::size_t i = 0; i < ambient_dim_; ++i) candidates.push_back(Vector::unit(ambient_dim_, i));
  TolerancePolicy t;
  t.abs_tol = tol;
  Subspace all = orthonormalize(candidates, ambient_dim_, t);
  return {all.basis().begin() + static_cast<std::ptrdiff_t>(basis_.size()), all.basis().end()};
}

bool Subspace::contains(const Vector& x, double tol) const {
  return norm2(x - project(x)) <= tol * std::max(1.0, norm2(x));
}

Subspace Subspace::full(std::size_t n) {
  std::vector<Vector> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back(Vector::unit(n, i));
  return orthonormalize(e, n);
}

Subspace orthonormalize(const std::vector<Vector>& vectors, std::size_t ambient_dim,
                        const TolerancePolicy& tol) {
  Subspace s(ambient_dim);
  for (const Vector& v : vectors) {
    if (v.size() != ambient_dim) throw DimensionError("orthonormalize: dimension mismatch");
    const double scale = std::max(1.0, norm2(v));
    Vector r = v;
    // Two Gram-Schmidt passes keep the basis orthonormal to working precision.
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& b : s.basis_) r -= dot(b, r) * b;
    const double len = norm2(r);
    if (len <= tol.abs_tol * scale) continue;
    s.basis_.push_back((1.0 / len) * r);
  }
  return s;
}

Vector quotient_representative(const Vector& x, const Subspace& n) { return x - n.project(x); }

Subspace null_space(const DenseMatrix& input, const TolerancePolicy& tol) {
  const std::size_t rows = input.rows();
  const std::size_t cols = input.cols();
  DenseMatrix a = input;
  double scale = 0.0;
  for (std::size_t i = 0; i < rows * cols; ++i) scale = std::max(scale, std::fabs(a.data()[i]));
  const double threshold = tol.abs_tol * std::max(1.0, scale);

  // Reduced row echelon form with partial pivoting.
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    for (std::size_t r = rank + 1; r < rows; ++r)
      if (std::fabs(a(r, c)) > std::fabs(a(pivot, c))) pivot = r;
    if (std::fabs(a(pivot, c)) <= threshold) {
      for (std::size_t r = rank; r < rows; ++r) a(r, c) = 0.0;
      continue;
    }
    for (std::size_t k = 0; k < cols; ++k) std::swap(a(pivot, k), a(rank, k));
    const double inv = 1.0 / a(rank, c);
    for (std::size_t k = 0; k < cols; ++k) a(rank, k) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a(r, c) == 0.0) continue;
      const double f = a(r, c);
      for (std::size_t k = 0; k < cols; ++k) a(r, k) -= f * a(rank, k);
    }
    pivot_cols.push_back(c);
    ++rank;
  }

  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols);
    v[f] = 1.0;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a(i, f);
    basis.push_back(std::move(v));
  }
  return orthonormalize(basis, cols, tol);
}

}  // namespace ovs
