#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ovs/posmaps.hpp"
#include "ovs/report.hpp"
#include "ovs/unitize.hpp"

namespace ovs {

struct CheckOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  TolerancePolicy tol{};
};

/// x <= y <= z implies p(y) <= max(p(x), p(z)), on chains x = y - s, z = y + t with s, t in K and on
/// chains built from pairs of generators. Witness (x, y, z).
PropertyReport check_one_max_normal(const Seminorm& p, const Cone& k, const CheckOptions& opt = {});

/// 0 <= x <= y implies p(x) <= p(y). Witness (x, y).
PropertyReport check_monotone(const Seminorm& p, const Cone& k, const CheckOptions& opt = {});

/// Membership in the full hull of {p <= 1} agrees with p_u <= 1 on a grid (dim 2) or on random
/// points of a box; points within abs_tol of p_u = 1 are counted as boundary and skipped.
PropertyReport check_full_hull_ball(const Seminorm& p, const Cone& k, const CheckOptions& opt = {});

/// Vertices of the full hull of {p <= 1} with respect to the closure of K.
std::vector<Vector> full_hull_ball_vertices(const Seminorm& p, const Cone& k, const TolerancePolicy& tol = {});

/// Estimates eps_low = inf p_u / p over the unit sphere of p (samples, sign-vector candidates and a
/// local pattern search). Fails when p_u > p somewhere or eps_low is not bounded away from 0;
/// `value` holds eps_low.
PropertyReport check_equivalence_constants(const Seminorm& p, const Cone& k, const CheckOptions& opt = {});

/// p_u is a norm: passes when the p-closure of K is proper (checked exactly) and p_u > 0 on sphere
/// samples; fails with a vector of the degeneracy space otherwise. Also requires p_u monotone.
PropertyReport check_normal_cone_norm(const Seminorm& p, const Cone& k, const CheckOptions& opt = {});

/// Runs universal_extension on psi and checks factorization through the canonical map, unitality
/// and uniqueness by reconstruction from psi and the codomain unit. A non-positive or
/// non-contractive psi gives PreconditionFailed with the witness.
PropertyReport check_universal_property(const PositiveMap& psi, const CheckOptions& opt = {});

/// p_u <= p pointwise (1e-12 relative).
PropertyReport check_pu_bounded_by_p(const SeminormedSpace& e, const CheckOptions& opt = {});

/// p_u = p (for order-unit seminorms), 1e-12 relative.
PropertyReport check_pu_equals_p(const SeminormedSpace& e, const CheckOptions& opt = {});

/// (p_u)_u = p_u within 1e-9. Needs a polyhedral p_u ball for the inner distance.
PropertyReport check_idempotence(const SeminormedSpace& e, const CheckOptions& opt = {});

/// Unitized membership agrees between the builds from p and from p_u, off a 1e-7 band.
PropertyReport check_stability(const SeminormedSpace& e, const CheckOptions& opt = {});

/// order_unit_norm equals the defining infimum inf {t : -t u <= e <= t u}, found by bisection with
/// unitized_contains, within 1e-7.
PropertyReport check_norm_formula(const UnitizedSpace& u, const CheckOptions& opt = {});

/// ||phi(x)||_u <= p(x) + 1e-9, and phi(x) in the unitized cone iff x lies in the p-closure of K
/// (zero disagreements off a 1e-9 band).
PropertyReport check_canonical_map(const UnitizedSpace& u, const CheckOptions& opt = {});

/// For an order unit space: the Archimedeanization embeds isometrically into the unitization and both
/// retractions are the identity on the embedded copy.
PropertyReport check_archimedeanization(const SeminormedSpace& e, const CheckOptions& opt = {});

/// g_alpha fails positivity with a witness at alpha = 0.999 ||f|| and passes at 1.001 ||f||.
PropertyReport check_threshold_sharpness(const PositiveMap& f, const CheckOptions& opt = {});

/// Positive maps from (R^n, orthant, lq) into (R^m, orthant, w), q cycling through 1, 2, inf.
std::vector<PositiveMap> golden_map_instances(std::size_t count, std::uint64_t seed);

/// A named seminormed space of the golden suite.
struct GoldenInstance {
  std::string name;
  SeminormedSpace space;
  bool polyhedral_pu = false;  // p_u has a polyhedral ball, so idempotence and stability apply
};

std::vector<GoldenInstance> golden_instances();

struct SuiteRow {
  std::string instance;
  PropertyReport report;
  Verdict expected = Verdict::Pass;
  std::optional<double> expected_value;
  double value_tol = 0.0;

  /// Verdict as expected (indeterminate counts as pass) and value within value_tol when pinned.
  bool ok() const;
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<SuiteRow> rows;

  bool all_ok() const;
};

/// "golden", "random" or "broken"; throws std::invalid_argument for anything else.
SuiteResult run_suite(const std::string& suite, std::uint64_t seed);

/// Tab-separated rows: instance, property, verdict, expected, ok, samples, tolerance, value, witness, seed.
std::string format_suite_tsv(const SuiteResult& r);

/// Per-row seed derived from the suite seed and a label (FNV-1a, platform independent).
std::uint64_t derive_seed(std::uint64_t seed, const std::string& label);

}  // namespace ovs
