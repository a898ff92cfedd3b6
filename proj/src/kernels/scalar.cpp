#include <algorithm>
#include <cmath>

#include "ovs/kernels.hpp"

namespace ovs::kernels {
namespace scalar {
namespace {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_abs(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

double sum_sq(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

double neg_sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::max(-x[i], 0.0);
  return s;
}

double neg_sum_sq(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::max(-x[i], 0.0);
    s += v * v;
  }
  return s;
}

double neg_max(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, -x[i]);
  return m;
}

double min_entry(const double* x, std::size_t n) {
  double m = n ? x[0] : 0.0;
  for (std::size_t i = 1; i < n; ++i) m = std::min(m, x[i]);
  return m;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void rotate(double* x, double* y, std::size_t n, double c, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot(a + r * cols, x, cols);
}

}  // namespace
}  // namespace scalar

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{"scalar",          scalar::dot,       scalar::sum_abs,
                                 scalar::sum_sq,    scalar::max_abs,   scalar::neg_sum,
                                 scalar::neg_sum_sq, scalar::neg_max,  scalar::min_entry,
                                 scalar::axpy,      scalar::rotate,    scalar::gemv};
  return table;
}

}  // namespace ovs::kernels
