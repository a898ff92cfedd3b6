#pragma once

#include <cstddef>
#include <vector>

#include "ovs/linalg.hpp"
#include "ovs/tolerance.hpp"

namespace ovs {

/// {x : <normals[i], x> <= offsets[i] for all i}.
struct HPolytope {
  std::size_t dim = 0;
  std::vector<Vector> normals;
  std::vector<double> offsets;

  std::size_t size() const noexcept { return normals.size(); }
  void add(Vector normal, double offset);
  void validate() const;
  /// Closed membership with slack tol * max(1, |offset|).
  bool contains(const Vector& x, double tol) const;
  /// Largest constraint violation max_i (<h_i,x> - c_i), or -inf for no rows.
  double max_violation(const Vector& x) const;
  /// True when every halfspace <h,x> <= c has a partner <-h,x> <= c.
  bool is_symmetric(double tol) const;
};

/// conv(vertices) + cone(rays).
struct VPolyhedron {
  std::size_t dim = 0;
  std::vector<Vector> vertices;
  std::vector<Vector> rays;

  bool is_bounded() const noexcept { return rays.empty(); }
};

/// A polyhedral cone cone(rays) + span(lineality).
struct ConeGenerators {
  std::vector<Vector> rays;
  std::vector<Vector> lineality;  // orthonormal
};

/// Largest ambient dimension accepted by representation conversion.
inline constexpr std::size_t kMaxConversionDim = 6;

/// Double description: generators of {x : <h, x> >= 0 for every h in normals}.
/// `max_dim` guards the combinatorial blow-up.
ConeGenerators dd_generators(const std::vector<Vector>& normals, std::size_t dim,
                             const TolerancePolicy& tol = {}, std::size_t max_dim = kMaxConversionDim + 1);

/// Inward normals h of cone(rays) + span(lineality): the cone equals {x : <h,x> >= 0 for all h}.
/// Equalities appear as pairs h, -h.
std::vector<Vector> dd_normals(const std::vector<Vector>& rays, const std::vector<Vector>& lineality,
                               std::size_t dim, const TolerancePolicy& tol = {},
                               std::size_t max_dim = kMaxConversionDim + 1);

/// Vertices and recession rays of an H-polytope (lines are reported as a pair of opposite rays).
VPolyhedron vertex_enumeration(const HPolytope& p, const TolerancePolicy& tol = {});

/// Irredundant H-representation of a V-polyhedron.
HPolytope facet_enumeration(const VPolyhedron& p, const TolerancePolicy& tol = {});

/// Bounded in every coordinate direction, certified by 2n linear programs.
bool is_bounded(const HPolytope& p, const TolerancePolicy& tol = {});

struct FullHull {
  HPolytope hrep;
  VPolyhedron vrep;
};

/// Full hull (P + K) ∩ (P - K) of a polyhedron P with respect to the polyhedral cone K.
FullHull full_hull(const VPolyhedron& p, const ConeGenerators& k, const TolerancePolicy& tol = {});
FullHull full_hull(const HPolytope& p, const ConeGenerators& k, const TolerancePolicy& tol = {});

/// Vertex sets equal up to permutation within tol.
bool same_point_set(const std::vector<Vector>& a, const std::vector<Vector>& b, double tol);

}  // namespace ovs
