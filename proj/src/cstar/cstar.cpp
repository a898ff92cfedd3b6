#include "ovs/cstar.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ovs/eigen.hpp"
#include "ovs/errors.hpp"
#include "ovs/svec.hpp"

namespace ovs {

HermitianElement HermitianElement::make(DenseMatrix a, const TolerancePolicy& tol) {
  if (a.rows() != a.cols()) throw PreconditionError("hermitian element: matrix is not square");
  if (!is_symmetric(a, tol.abs_tol)) throw PreconditionError("hermitian element: matrix is not symmetric");
  return HermitianElement{std::move(a)};
}

PosNegParts pos_neg_parts(const HermitianElement& a) {
  const SymmetricEigen e = jacobi_eigen(a.a);
  return {spectral_apply(e, [](double t) { return std::max(t, 0.0); }),
          spectral_apply(e, [](double t) { return std::max(-t, 0.0); })};
}

double dist_psd_opnorm(const HermitianElement& a) {
  if (a.side() == 0) return 0.0;
  return std::max(0.0, -min_eigenvalue(a.a));
}

double operator_norm(const HermitianElement& a) {
  if (a.side() == 0) return 0.0;
  const std::size_t n = a.side();
  return Seminorm::order_unit(Cone::psd(n), svec(DenseMatrix::identity(n))).eval(svec(a.a));
}

UnitizedSpace matrix_unitization(std::size_t n, const TolerancePolicy& tol) {
  if (n == 0) throw PreconditionError("matrix unitization: side must be positive");
  Cone k = Cone::psd(n);
  Seminorm op = Seminorm::order_unit(k, svec(DenseMatrix::identity(n)), tol);
  return build_unitization(SeminormedSpace{std::move(k), std::move(op)}, tol);
}

namespace {

DenseMatrix random_symmetric(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> scale(0.1, 3.0);
  const double s = scale(rng);
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = s * g(rng);
  // occasionally make a PSD or NSD so that both signs of d are exercised at zero
  std::uniform_int_distribution<int> kind(0, 5);
  const int k = kind(rng);
  if (k == 0) a = a * a.transpose();
  if (k == 1) a = -1.0 * (a * a.transpose());
  return a;
}

Vector failure_witness(const DenseMatrix& a, double lambda) { return concat(svec(a), Vector{lambda}); }

}  // namespace

PropertyReport check_cstar_unitization_agreement(std::size_t n, std::size_t samples, std::uint64_t seed,
                                                 const TolerancePolicy& tol) {
  PropertyReport r;
  r.property = "cstar-unitization-agreement";
  r.seed = seed;
  r.tolerance = tol.abs_tol;
  if (n == 0) {
    r.verdict = Verdict::PreconditionFailed;
    r.detail = "side must be positive";
    return r;
  }
  const UnitizedSpace u = matrix_unitization(n, tol);
  const Cone psd = Cone::psd(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double band = 1e-9;
  const double check_tol = 1e-8;
  std::size_t banded = 0;
  std::size_t unital_only = 0;

  auto fail = [&](const DenseMatrix& a, double lambda, std::string why) {
    r.verdict = Verdict::Fail;
    r.witness = failure_witness(a, lambda);
    r.detail = std::move(why);
    return r;
  };

  for (std::size_t s = 0; s < samples; ++s) {
    const DenseMatrix a = random_symmetric(n, rng);
    const HermitianElement h{a};
    const double dm = dist_psd_opnorm(h);
    const double dp = dist_psd_opnorm(HermitianElement{-1.0 * a});

    // lambda near +-||a^-||, at several offset scales
    const double offsets[] = {1e-7, 1e-4, 1e-2, 0.5};
    const double off = offsets[s % 4] * (0.5 + unif(rng));
    const double centre = (s % 8 < 6) ? dm : -dm;
    const double lambda = centre + ((s / 2) % 2 == 0 ? off : -off);

    ++r.samples;
    const Vector x = svec(a);
    const bool in_unitized = unitized_contains(u, u.element(x, lambda));
    const bool by_distance = dm <= lambda;
    DenseMatrix shifted = a;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) += lambda;
    // a + lambda 1 in the adjoined-identity algebra acts as diag(a + lambda I, lambda)
    const double lmin = min_eigenvalue(shifted);
    const bool by_spectrum = std::min(lmin, lambda) >= -tol.abs_tol;
    if ((lmin >= -tol.abs_tol) != by_spectrum) ++unital_only;

    if (std::abs(lambda - dm) <= band) {
      ++banded;
    } else if (in_unitized != by_distance || by_distance != by_spectrum) {
      return fail(a, lambda, "membership disagreement: unitized=" + std::to_string(in_unitized) +
                                 " distance=" + std::to_string(by_distance) + " spectrum=" + std::to_string(by_spectrum));
    }

    // d(a) from the general distance machinery agrees with the spectral formula
    if (std::abs(u.distance(x) - dm) > check_tol * std::max(1.0, dm))
      return fail(a, lambda, "distance machinery disagrees with max(0, -lambda_min)");

    const PosNegParts parts = pos_neg_parts(h);
    const double na = operator_norm(h);
    const double nplus = operator_norm(HermitianElement{parts.plus});
    const double nminus = operator_norm(HermitianElement{parts.minus});
    if (std::abs(na - std::max(nplus, nminus)) > check_tol * std::max(1.0, na))
      return fail(a, lambda, "||a|| != max(||a+||, ||a-||)");
    if (std::abs(nminus - dm) > check_tol * std::max(1.0, dm)) return fail(a, lambda, "||a-|| != d(a, PSD)");

    const UnitizedNorm un = order_unit_norm(u, u.element(x, lambda));
    const double expected = std::max(dm - lambda, dp + lambda);
    if (std::abs(un.norm - expected) > check_tol * std::max(1.0, std::abs(expected)))
      return fail(a, lambda, "unitized norm differs from max(d(a) - lambda, d(-a) + lambda)");

    // monotone perturbation: subtracting a PSD b cannot shrink the negative part
    Vector bv = sample_cone(psd, rng);
    const double d_shift = dist_psd_opnorm(HermitianElement{a - smat(bv)});
    if (d_shift < dm - tol.abs_tol * std::max(1.0, dm)) return fail(a - smat(bv), lambda, "||(a - b)^-|| < ||a^-||");
  }
  r.verdict = Verdict::Pass;
  r.detail = std::to_string(r.samples) + " samples, " + std::to_string(banded) + " within the boundary band, " +
             std::to_string(unital_only) + " where a + lambda I >= 0 alone would disagree (lambda < 0)";
  return r;
}

}  // namespace ovs
