#include "ovs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ovs/errors.hpp"
#include "ovs/kernels.hpp"

namespace ovs {
namespace {

void check_same_size(const Vector& a, const Vector& b, const char* op) {
  if (a.size() != b.size())
    throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
}

}  // namespace

Vector Vector::unit(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1.0;
  return v;
}

Vector& Vector::operator+=(const Vector& other) {
  check_same_size(*this, other, "vector +");
  kernels::active().axpy(1.0, other.data(), data(), size());
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  check_same_size(*this, other, "vector -");
  kernels::active().axpy(-1.0, other.data(), data(), size());
  return *this;
}

Vector& Vector::operator*=(double a) {
  for (double& x : data_) x *= a;
  return *this;
}

void Vector::require_finite(const char* what) const {
  for (double x : data_)
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator-(Vector a) { return a *= -1.0; }
Vector operator*(double s, Vector a) { return a *= s; }
Vector operator*(Vector a, double s) { return a *= s; }

double dot(const Vector& a, const Vector& b) {
  check_same_size(a, b, "dot");
  return kernels::active().dot(a.data(), b.data(), a.size());
}

double norm1(const Vector& a) { return kernels::active().sum_abs(a.data(), a.size()); }
double norm2(const Vector& a) { return std::sqrt(kernels::active().sum_sq(a.data(), a.size())); }
double norm_inf(const Vector& a) { return kernels::active().max_abs(a.data(), a.size()); }

Vector concat(const Vector& a, const Vector& b) {
  std::vector<double> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return Vector(std::move(out));
}

Vector slice(const Vector& a, std::size_t first, std::size_t count) {
  if (first + count > a.size()) throw DimensionError("slice out of range");
  return Vector(std::vector<double>(a.begin() + first, a.begin() + first + count));
}

double max_abs_diff(const Vector& a, const Vector& b) {
  check_same_size(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

std::string to_string(const Vector& v, int precision) {
  std::string out = "(";
  char buf[64];
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v[i]);
    if (i) out += ",";
    out += buf;
  }
  return out + ")";
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  DenseMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionError("from_rows: ragged rows");
    std::copy(rows[r].begin(), rows[r].end(), m.row_ptr(r));
  }
  return m;
}

DenseMatrix DenseMatrix::from_columns(const std::vector<Vector>& cols, std::size_t rows) {
  DenseMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw DimensionError("from_columns: ragged columns");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

DenseMatrix DenseMatrix::diagonal(const Vector& d) {
  DenseMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Vector DenseMatrix::row(std::size_t r) const {
  return Vector(std::vector<double>(row_ptr(r), row_ptr(r) + cols_));
}

Vector DenseMatrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Vector DenseMatrix::apply(const Vector& x) const {
  if (x.size() != cols_)
    throw DimensionError("matrix apply: expected " + std::to_string(cols_) + " entries, got " +
                         std::to_string(x.size()));
  Vector y(rows_);
  kernels::active().gemv(data(), rows_, cols_, x.data(), y.data());
  return y;
}

Vector DenseMatrix::apply_transpose(const Vector& y) const {
  if (y.size() != rows_) throw DimensionError("matrix apply_transpose: dimension mismatch");
  Vector x(cols_);
  for (std::size_t r = 0; r < rows_; ++r) kernels::active().axpy(y[r], row_ptr(r), x.data(), cols_);
  return x;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimension mismatch");
  DenseMatrix c(a.rows(), b.cols());
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l)
      if (a(i, l) != 0.0) k.axpy(a(i, l), b.row_ptr(l), c.row_ptr(i), b.cols());
  return c;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix +: shape mismatch");
  DenseMatrix c = a;
  kernels::active().axpy(1.0, b.data(), c.data(), a.rows() * a.cols());
  return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix -: shape mismatch");
  DenseMatrix c = a;
  kernels::active().axpy(-1.0, b.data(), c.data(), a.rows() * a.cols());
  return c;
}

DenseMatrix operator*(double s, DenseMatrix a) {
  for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) a.data()[i] *= s;
  return a;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows() * a.cols(); ++i)
    m = std::max(m, std::fabs(a.data()[i] - b.data()[i]));
  return m;
}

double frobenius_norm(const DenseMatrix& a) {
  return std::sqrt(kernels::active().sum_sq(a.data(), a.rows() * a.cols()));
}

std::size_t matrix_rank(const DenseMatrix& input, double tol) {
  DenseMatrix a = input;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  double scale = 0.0;
  for (std::size_t i = 0; i < rows * cols; ++i) scale = std::max(scale, std::fabs(a.data()[i]));
  if (scale == 0.0) return 0;
  const double threshold = tol * std::max(1.0, scale);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    for (std::size_t r = rank + 1; r < rows; ++r)
      if (std::fabs(a(r, c)) > std::fabs(a(pivot, c))) pivot = r;
    if (std::fabs(a(pivot, c)) <= threshold) continue;
    for (std::size_t k = 0; k < cols; ++k) std::swap(a(pivot, k), a(rank, k));
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const double f = a(r, c) / a(rank, c);
      if (f != 0.0) kernels::active().axpy(-f, a.row_ptr(rank), a.row_ptr(r), cols);
    }
    ++rank;
  }
  return rank;
}

Vector solve_square(DenseMatrix a, Vector b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw DimensionError("solve_square: shape mismatch");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a(r, c)) > std::fabs(a(pivot, c))) pivot = r;
    if (std::fabs(a(pivot, c)) < 1e-300) throw SolverError("solve_square: singular matrix");
    if (pivot != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(pivot, k), a(c, k));
      std::swap(b[pivot], b[c]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      if (f == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
      b[r] -= f * b[c];
    }
  }
  Vector x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a(i, k) * x[k];
    x[i] = s / a(i, i);
  }
  return x;
}

}  // namespace ovs
