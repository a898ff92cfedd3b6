#pragma once

#include <cstdint>

#include "ovs/linalg.hpp"
#include "ovs/report.hpp"
#include "ovs/tolerance.hpp"
#include "ovs/unitize.hpp"

namespace ovs {

/// Self-adjoint element of the n x n real matrices (real symmetric stands in for Hermitian).
struct HermitianElement {
  DenseMatrix a;

  /// Throws PreconditionError unless a is square and symmetric within abs_tol.
  static HermitianElement make(DenseMatrix a, const TolerancePolicy& tol = {});
  std::size_t side() const noexcept { return a.rows(); }
};

struct PosNegParts {
  DenseMatrix plus;
  DenseMatrix minus;
};

/// a = a+ - a-, both PSD with a+ a- = 0, by clamping eigenvalues.
PosNegParts pos_neg_parts(const HermitianElement& a);

/// d(a, PSD) in the operator norm: max(0, -lambda_min(a)) = ||a^-||.
double dist_psd_opnorm(const HermitianElement& a);

/// ||a|| = max |lambda|.
double operator_norm(const HermitianElement& a);

/// Unitization of (symmetric n x n matrices in svec coordinates, PSD, operator norm).
UnitizedSpace matrix_unitization(std::size_t n, const TolerancePolicy& tol = {});

/// On random symmetric a and lambda near +-||a^-||: unitized membership of (a, lambda), the
/// inequality ||a^-|| <= lambda and positivity of a + lambda 1 in the adjoined-identity algebra,
/// i.e. min(lambda_min(a + lambda I), lambda) >= -abs_tol, agree off a boundary band;
/// also ||a|| = max(||a^-||, ||a^+||), the unitized norm formula and monotone perturbation.
PropertyReport check_cstar_unitization_agreement(std::size_t n, std::size_t samples, std::uint64_t seed,
                                                 const TolerancePolicy& tol = {});

}  // namespace ovs
