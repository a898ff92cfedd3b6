#include "ovs/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ovs/errors.hpp"

namespace ovs {

Vector least_squares_columns(const DenseMatrix& a, const std::vector<std::size_t>& columns, const Vector& b) {
  const std::size_t m = a.rows();
  const std::size_t k = columns.size();
  DenseMatrix q(m, k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < m; ++r) q(r, c) = a(r, columns[c]);
  Vector rhs = b;

  // Householder QR; columns whose remaining norm is negligible are treated as dependent.
  std::vector<bool> dependent(k, false);
  std::vector<std::size_t> pivot_row(k, 0);
  std::size_t row = 0;
  double scale = 0.0;
  for (std::size_t i = 0; i < m * k; ++i) scale = std::max(scale, std::fabs(q.data()[i]));
  for (std::size_t c = 0; c < k; ++c) {
    double norm = 0.0;
    for (std::size_t r = row; r < m; ++r) norm += q(r, c) * q(r, c);
    norm = std::sqrt(norm);
    if (row >= m || norm <= 1e-12 * std::max(1.0, scale)) {
      dependent[c] = true;
      continue;
    }
    const double alpha = q(row, c) > 0 ? -norm : norm;
    Vector v(m);
    for (std::size_t r = row; r < m; ++r) v[r] = q(r, c);
    v[row] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t r = row; r < m; ++r) vnorm2 += v[r] * v[r];
    if (vnorm2 > 0.0) {
      for (std::size_t cc = c; cc < k; ++cc) {
        double s = 0.0;
        for (std::size_t r = row; r < m; ++r) s += v[r] * q(r, cc);
        s = 2.0 * s / vnorm2;
        for (std::size_t r = row; r < m; ++r) q(r, cc) -= s * v[r];
      }
      double s = 0.0;
      for (std::size_t r = row; r < m; ++r) s += v[r] * rhs[r];
      s = 2.0 * s / vnorm2;
      for (std::size_t r = row; r < m; ++r) rhs[r] -= s * v[r];
    }
    pivot_row[c] = row;
    ++row;
  }

  Vector x(k);
  for (std::size_t c = k; c-- > 0;) {
    if (dependent[c]) continue;
    const std::size_t r = pivot_row[c];
    double s = rhs[r];
    for (std::size_t cc = c + 1; cc < k; ++cc)
      if (!dependent[cc]) s -= q(r, cc) * x[cc];
    x[c] = s / q(r, c);
  }
  return x;
}

NnlsResult solve_nnls(const DenseMatrix& a, const Vector& b, const TolerancePolicy& tol) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) throw DimensionError("solve_nnls: rhs length does not match row count");

  Vector x(n);
  std::vector<bool> passive(n, false);
  double scale = norm2(b);
  for (std::size_t i = 0; i < m * n; ++i) scale = std::max(scale, std::fabs(a.data()[i]));
  const double grad_tol = 1e-12 * std::max(1.0, scale * scale);

  NnlsResult out;
  int iter = 0;
  const int max_outer = std::max(3 * static_cast<int>(n), 30);
  for (int outer = 0;; ++outer) {
    if (outer > max_outer || iter > tol.max_iter) throw SolverError("solve_nnls: iteration limit exceeded");
    const Vector w = a.apply_transpose(b - a.apply(x));
    std::size_t best = n;
    double best_w = grad_tol;
    for (std::size_t j = 0; j < n; ++j)
      if (!passive[j] && w[j] > best_w) {
        best_w = w[j];
        best = j;
      }
    if (best == n) break;
    passive[best] = true;

    while (true) {
      ++iter;
      if (iter > tol.max_iter) throw SolverError("solve_nnls: iteration limit exceeded");
      std::vector<std::size_t> cols;
      for (std::size_t j = 0; j < n; ++j)
        if (passive[j]) cols.push_back(j);
      const Vector zc = least_squares_columns(a, cols, b);
      Vector z(n);
      for (std::size_t i = 0; i < cols.size(); ++i) z[cols[i]] = zc[i];

      bool feasible = true;
      for (std::size_t j : cols)
        if (z[j] <= 0.0) feasible = false;
      if (feasible) {
        x = z;
        break;
      }
      // Step toward z until the first passive coefficient hits zero.
      double step = std::numeric_limits<double>::infinity();
      for (std::size_t j : cols)
        if (z[j] <= 0.0) {
          const double denom = x[j] - z[j];
          if (denom > 0.0) step = std::min(step, x[j] / denom);
        }
      if (!std::isfinite(step)) step = 0.0;
      for (std::size_t j = 0; j < n; ++j) x[j] += step * (z[j] - x[j]);
      for (std::size_t j : cols)
        if (x[j] <= 1e-14 * std::max(1.0, scale)) {
          x[j] = 0.0;
          passive[j] = false;
        }
    }
  }
  for (double& v : x) v = std::max(v, 0.0);
  out.coefficients = x;
  out.residual_norm = norm2(a.apply(x) - b);
  out.iterations = iter;
  return out;
}

}  // namespace ovs
