#include "ovs/svec.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ovs/errors.hpp"

namespace ovs {

std::size_t svec_dim(std::size_t side) noexcept { return side * (side + 1) / 2; }

std::size_t svec_side(std::size_t m) {
  std::size_t n = 0;
  while (svec_dim(n) < m) ++n;
  if (svec_dim(n) != m) throw DimensionError("svec: length " + std::to_string(m) + " is not a triangular number");
  return n;
}

Vector svec(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("svec: matrix must be square");
  const std::size_t n = a.rows();
  Vector v(svec_dim(n));
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) v[k++] = i == j ? a(i, i) : std::numbers::sqrt2 * 0.5 * (a(i, j) + a(j, i));
  return v;
}

DenseMatrix smat(const Vector& v) {
  const std::size_t n = svec_side(v.size());
  DenseMatrix a(n, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (i == j)
        a(i, i) = v[k++];
      else
        a(i, j) = a(j, i) = v[k++] / std::numbers::sqrt2;
    }
  return a;
}

}  // namespace ovs
