#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops. Each kernel has a portable scalar reference
// implementation and, on x86-64, an AVX2/FMA variant. The variant is chosen
// once per process from CPUID; setting OVS_SIMD=scalar forces the reference.

namespace ovs::kernels {

struct KernelTable {
  std::string_view name;
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*sum_abs)(const double* x, std::size_t n);
  double (*sum_sq)(const double* x, std::size_t n);
  double (*max_abs)(const double* x, std::size_t n);
  // Norms of the negative part x⁻ = max(-x, 0).
  double (*neg_sum)(const double* x, std::size_t n);
  double (*neg_sum_sq)(const double* x, std::size_t n);
  double (*neg_max)(const double* x, std::size_t n);
  double (*min_entry)(const double* x, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // Plane rotation: (x, y) <- (c x - s y, s x + c y)
  void (*rotate)(double* x, double* y, std::size_t n, double c, double s);
  // y = A x, A row-major rows x cols
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
};

const KernelTable& scalar_table() noexcept;

/// AVX2 table, or nullptr when the CPU (or the build target) lacks AVX2/FMA.
const KernelTable* avx2_table() noexcept;

/// Table selected for this process.
const KernelTable& active() noexcept;

}  // namespace ovs::kernels
