#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "ovs/report.hpp"
#include "ovs/unitize.hpp"

namespace ovs {

/// Archimedean order unit space (F, F+, w) with its order-unit norm.
struct AouSpace {
  Cone cone;
  Vector unit;
  Seminorm norm;
};

/// Validates w as an order unit of the cone.
AouSpace aou_space(Cone cone, Vector unit, const TolerancePolicy& tol = {});

/// Spaces a linear map can act between. Unitized spaces use coordinates (rep, lambda).
using MapSpace = std::variant<SeminormedSpace, UnitizedSpace, AouSpace>;

std::size_t space_dim(const MapSpace& s);
bool space_contains(const MapSpace& s, const Vector& v, const TolerancePolicy& tol = {});
double space_norm(const MapSpace& s, const Vector& v);
/// The order unit, when the space carries one together with its order-unit norm.
std::optional<Vector> space_unit(const MapSpace& s);
/// Generators of the closed cone (nonnegative combinations), when finitely generated.
std::optional<std::vector<Vector>> space_cone_generators(const MapSpace& s, const TolerancePolicy& tol = {});
/// Inward normals of the closed cone, when polyhedral.
std::optional<std::vector<Vector>> space_cone_normals(const MapSpace& s, const TolerancePolicy& tol = {});
/// Closed unit ball of the space norm, when polyhedral.
std::optional<HPolytope> space_ball(const MapSpace& s, const TolerancePolicy& tol = {});
/// Random cone element; for unitized spaces a fraction lands on lambda = d(rep).
Vector sample_space_cone(const MapSpace& s, std::mt19937_64& rng);
std::string describe(const MapSpace& s);

/// Generators of the unitized cone in coordinates (rep, lambda) when the base cone and the
/// base seminorm are polyhedral.
std::optional<std::vector<Vector>> unitized_cone_generators(const UnitizedSpace& u, const TolerancePolicy& tol = {});

/// A linear map between two spaces, held as a matrix on their coordinates.
struct PositiveMap {
  DenseMatrix matrix;
  MapSpace domain;
  MapSpace codomain;
  std::optional<double> cached_norm;

  PositiveMap(DenseMatrix m, MapSpace dom, MapSpace cod);
  Vector apply(const Vector& x) const { return matrix.apply(x); }
};

struct SamplingOptions {
  std::size_t samples = 10'000;
  std::uint64_t seed = 0;
};

/// f[domain cone] ⊆ codomain cone. Exact by generators when the domain cone is finitely generated
/// and the codomain cone is closed; sampled otherwise, with targeted candidates first.
PropertyReport is_positive(const PositiveMap& f, const SamplingOptions& opt = {}, const TolerancePolicy& tol = {});

struct OperatorNorm {
  double value = 0.0;
  Vector maximizer;
  std::string method;
};

/// sup { ||f x|| : ||x|| <= 1 }. Supported: polyhedral domain ball (vertex maximization);
/// Euclidean domain seminorm with a polyhedral codomain norm (closed form over codomain facets);
/// scalar codomain with an lq domain (dual norm); positive maps from an order unit space into an
/// order unit space (||f(u)||). Anything else raises UnsupportedError.
OperatorNorm operator_norm_detail(const PositiveMap& f, const TolerancePolicy& tol = {});
double operator_norm(const PositiveMap& f, const TolerancePolicy& tol = {});

/// The domain as a seminormed space (order unit spaces carry their order-unit norm).
SeminormedSpace as_seminormed(const MapSpace& s);

/// g_alpha(x + N, lambda) = f(x) + alpha lambda w on the unitization of f's domain.
PositiveMap extend_g_alpha(const PositiveMap& f, double alpha, const TolerancePolicy& tol = {});

/// The unique unital positive extension psi~(x + N, lambda) = psi(x) + lambda w of a positive
/// contractive psi. Rejects non-positive or non-contractive psi with a witness.
PositiveMap universal_extension(const PositiveMap& psi, const SamplingOptions& opt = {}, const TolerancePolicy& tol = {});

/// g_{||f||}.
PositiveMap norm_preserving_extension(const PositiveMap& f, const TolerancePolicy& tol = {});

/// (x + N, lambda) -> (f(x) + M, lambda ||f||) between the unitizations of domain and codomain.
PositiveMap unitize_map(const PositiveMap& f, const TolerancePolicy& tol = {});

/// (x + N, lambda) -> (x + N, 0). Requires a base carrying an order-unit seminorm. Its positivity
/// is reported by is_positive, not assumed.
PositiveMap retract_projection(const UnitizedSpace& u);

/// (x + N, lambda) -> (x + lambda u + N, 0): a positive retraction onto E/N ⊕ {0} for an order
/// unit space base.
PositiveMap universal_retraction(const UnitizedSpace& u);

}  // namespace ovs
