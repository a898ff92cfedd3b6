#include "ovs/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ovs/errors.hpp"
#include "ovs/kernels.hpp"

namespace ovs {

SymmetricEigen jacobi_eigen(const DenseMatrix& input, int max_sweeps) {
  const std::size_t n = input.rows();
  if (input.cols() != n) throw DimensionError("jacobi_eigen: matrix must be square");

  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = input(i, j);
  // Rows of vt are eigenvectors; rotations act on contiguous rows, which is what the kernel wants.
  DenseMatrix vt = DenseMatrix::identity(n);
  const auto& k = kernels::active();

  const double scale = frobenius_norm(a);
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= 1e-15 * scale || off == 0.0) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // A <- J^T A J with J the (p,q) rotation; rows then columns.
        k.rotate(a.row_ptr(p), a.row_ptr(q), n, c, s);
        for (std::size_t r = 0; r < n; ++r) {
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(r, q) = s * arp + c * arq;
        }
        a(p, q) = a(q, p) = 0.0;
        k.rotate(vt.row_ptr(p), vt.row_ptr(q), n, c, s);
      }
    }
  }
  if (sweep == max_sweeps) throw SolverError("jacobi_eigen: no convergence");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  SymmetricEigen out{Vector(n), DenseMatrix(n, n), sweep};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = vt(order[c], r);
  }
  return out;
}

double min_eigenvalue(const DenseMatrix& a) {
  if (a.rows() == 0) return 0.0;
  if (a.rows() == 1) return a(0, 0);
  return jacobi_eigen(a).values[0];
}

DenseMatrix spectral_apply(const SymmetricEigen& e, double (*f)(double)) {
  const std::size_t n = e.values.size();
  DenseMatrix out(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const double fv = f(e.values[c]);
    if (fv == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) += fv * e.vectors(i, c) * e.vectors(j, c);
  }
  return out;
}

bool is_symmetric(const DenseMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (std::fabs(a(i, j) - a(j, i)) > tol * std::max(1.0, std::fabs(a(i, j)))) return false;
  return true;
}

}  // namespace ovs
