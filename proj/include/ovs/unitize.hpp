#pragma once

#include <string>
#include <vector>

#include "ovs/cone.hpp"
#include "ovs/distance.hpp"
#include "ovs/linalg.hpp"
#include "ovs/seminorm.hpp"
#include "ovs/subspace.hpp"
#include "ovs/tolerance.hpp"

namespace ovs {

/// (E, E+, p).
struct SeminormedSpace {
  Cone cone;
  Seminorm seminorm;

  std::size_t dim() const noexcept { return cone.dim(); }
  void validate() const;
};

/// (x + N, lambda), with x the canonical representative (orthogonal to N).
struct UnitizedElement {
  Vector rep;
  double lambda = 0.0;
};

/// Coordinates (rep, lambda) as one vector of length dim + 1, and back.
Vector to_coordinates(const UnitizedElement& e);
UnitizedElement from_coordinates(const Vector& v);

/// The Archimedean order unitization E/N ⊕ R with cone {lambda >= d(x, E+)} and unit (0 + N, 1).
/// Elements are stored through coset representatives in the ambient coordinates of E.
class UnitizedSpace {
 public:
  UnitizedSpace(SeminormedSpace base, Subspace n, DistanceMethod method, TolerancePolicy tol);

  const SeminormedSpace& base() const noexcept { return base_; }
  /// N: lineality space of the p-closure of E+.
  const Subspace& lineality() const noexcept { return n_; }
  std::size_t base_dim() const noexcept { return base_.dim(); }
  std::size_t quotient_dim() const noexcept { return base_.dim() - n_.dim(); }
  /// Length of the coordinate vectors (rep, lambda).
  std::size_t coord_dim() const noexcept { return base_.dim() + 1; }
  DistanceMethod method() const noexcept { return method_; }
  const TolerancePolicy& tolerance() const noexcept { return tol_; }

  UnitizedElement unit() const;
  /// (x + N, lambda) with x replaced by its canonical representative.
  UnitizedElement element(const Vector& x, double lambda) const;
  /// d(x, E+).
  double distance(const Vector& x) const;

 private:
  SeminormedSpace base_;
  Subspace n_;
  DistanceMethod method_;
  TolerancePolicy tol_;
};

/// Lineality space of the closure of E+ in the seminorm p, i.e. of closure(E+ + ker p).
Subspace seminorm_closure_lineality(const Cone& k, const Seminorm& p, const TolerancePolicy& tol = {});

UnitizedSpace build_unitization(const SeminormedSpace& e, const TolerancePolicy& tol = {});

/// lambda >= d(rep, E+) - abs_tol.
bool unitized_contains(const UnitizedSpace& u, const UnitizedElement& e);

/// phi(x) = (x + N, 0).
UnitizedElement canonical_map(const UnitizedSpace& u, const Vector& x);

struct UnitizedNorm {
  double norm = 0.0;
  double alpha = 0.0;  // lambda - d(x)
  double omega = 0.0;  // lambda + d(-x)
};

/// ||(x + N, lambda)||_u = max(d(x) - lambda, d(-x) + lambda).
UnitizedNorm order_unit_norm(const UnitizedSpace& u, const UnitizedElement& e);

/// p_u(x) = max(d(x, E+), d(-x, E+)).
Seminorm one_max_normalization(const SeminormedSpace& e, const TolerancePolicy& tol = {});

/// Quotient E/N with the pushed-forward closed cone and unit u + N. Quotient coordinates are
/// taken in an orthonormal basis Q of the complement of N (columns of `basis`).
struct Archimedeanization {
  SeminormedSpace space;
  Vector unit;
  DenseMatrix basis;  // n x k
  Subspace lineality;

  Vector to_quotient(const Vector& x) const;        // Q^T x
  Vector representative(const Vector& z) const;     // Q z
};

/// Requires the seminorm of E to be the order-unit seminorm of (E+, u).
Archimedeanization archimedeanization(const SeminormedSpace& e, const TolerancePolicy& tol = {});

/// The Archimedeanization element z embedded into the unitization as (Q z + N, 0).
UnitizedElement embed_archimedeanization(const Archimedeanization& a, const UnitizedSpace& u, const Vector& z);

/// Sample of the z = 1 slice of the unitized cone over a 2-dimensional base.
struct CrossSectionPoint {
  double x = 0.0;
  double y = 0.0;
  double d = 0.0;
  bool inside = false;  // d <= 1 within abs_tol
};

/// N x N grid on [-w, w]^2, row-major with y descending from +w (image order).
std::vector<CrossSectionPoint> cross_section_grid(const UnitizedSpace& u, std::size_t n, double w);

struct CrossSectionDecision {
  bool polyhedral = false;
  std::size_t facets = 0;        // straight boundary pieces of the slice
  std::vector<std::size_t> pieces_by_resolution;
  bool grid_exact = false;       // reconstructed H-rep matches d <= 1 on the check grid
  bool lattice = false;          // simplicial unitized cone in R^3
  std::size_t extreme_rays = 0;  // of the unitized cone, when polyhedral
  std::vector<Vector> extreme_ray_list;
  std::string detail;
};

/// Decide polyhedrality of the z = 1 slice by reconstructing its boundary from ray bisection at
/// several angular resolutions and checking the reconstruction on a grid; decide the lattice
/// property by counting extreme rays of the unitized cone in R^3.
CrossSectionDecision decide_cross_section(const UnitizedSpace& u, double window, std::size_t resolution = 256);

}  // namespace ovs
