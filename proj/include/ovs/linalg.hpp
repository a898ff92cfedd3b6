#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace ovs {

/// Dense real vector. Entries are finite; dimension is the entry count.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n, double fill = 0.0) : data_(n, fill) {}
  Vector(std::initializer_list<double> values) : data_(values) {}
  explicit Vector(std::vector<double> values) : data_(std::move(values)) {}

  static Vector unit(std::size_t n, std::size_t i);

  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }
  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  std::span<const double> span() const noexcept { return data_; }
  const std::vector<double>& values() const noexcept { return data_; }

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double a);

  bool operator==(const Vector&) const = default;

  /// Throws std::invalid_argument when any entry is NaN or infinite.
  void require_finite(const char* what) const;

 private:
  std::vector<double> data_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator-(Vector a);
Vector operator*(double s, Vector a);
Vector operator*(Vector a, double s);

double dot(const Vector& a, const Vector& b);
double norm1(const Vector& a);
double norm2(const Vector& a);
double norm_inf(const Vector& a);
/// a (+) b : concatenation.
Vector concat(const Vector& a, const Vector& b);
/// Entries with index in [first, first+count).
Vector slice(const Vector& a, std::size_t first, std::size_t count);
/// Largest absolute entry difference.
double max_abs_diff(const Vector& a, const Vector& b);

std::string to_string(const Vector& v, int precision = 12);

/// Dense row-major real matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static DenseMatrix from_columns(const std::vector<Vector>& cols, std::size_t rows);
  static DenseMatrix diagonal(const Vector& d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const double* data() const noexcept { return data_.data(); }
  double* data() noexcept { return data_.data(); }
  const double* row_ptr(std::size_t r) const noexcept { return data_.data() + r * cols_; }
  double* row_ptr(std::size_t r) noexcept { return data_.data() + r * cols_; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;

  DenseMatrix transpose() const;
  Vector apply(const Vector& x) const;
  Vector apply_transpose(const Vector& y) const;

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, DenseMatrix a);
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);
double frobenius_norm(const DenseMatrix& a);

/// Row-reduction rank with pivot threshold tol * max|entry|.
std::size_t matrix_rank(const DenseMatrix& a, double tol);

/// Solve the square system a x = b by partial-pivot elimination; throws on singular input.
Vector solve_square(DenseMatrix a, Vector b);

}  // namespace ovs
