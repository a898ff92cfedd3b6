#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ovs/linalg.hpp"
#include "ovs/polyhedra.hpp"
#include "ovs/subspace.hpp"
#include "ovs/tolerance.hpp"

namespace ovs {

class Seminorm;

enum class ConeKind { Orthant, VPoly, HPoly, IceCream, Psd, Zero, Full, DeclaredClosure };

const char* to_string(ConeKind k);

/// Membership predicate of a possibly non-closed cone: a union of pieces, each an
/// intersection of strict (<h,x> > 0), weak (<h,x> >= 0) and equality (<h,x> = 0) conditions.
struct ConePredicate {
  struct Piece {
    std::vector<Vector> strict;
    std::vector<Vector> weak;
    std::vector<Vector> equal;
  };
  std::string description;
  std::vector<Piece> pieces;

  bool holds(const Vector& x, double tol) const;
};

/// Convex cone in one of several representations. Cheap to copy; immutable.
class Cone {
 public:
  static Cone orthant(std::size_t dim);
  static Cone vpoly(std::size_t dim, std::vector<Vector> generators);
  static Cone hpoly(std::size_t dim, std::vector<Vector> normals);
  /// {(x, t) : p(x) <= t} in dimension p.dim() + 1.
  static Cone ice_cream(const Seminorm& p);
  /// Positive semidefinite n x n matrices in svec coordinates.
  static Cone psd(std::size_t side);
  static Cone zero(std::size_t dim);
  static Cone full(std::size_t dim);
  /// A non-closed cone given by its predicate together with its closure. The predicate is
  /// checked to imply closure membership on a deterministic sample.
  static Cone declared_closure(ConePredicate predicate, Cone closure);

  ConeKind kind() const noexcept;
  std::size_t dim() const noexcept;

  bool contains(const Vector& x, const TolerancePolicy& tol = {}) const;

  /// Finitely generated and carried in a form the polyhedral machinery accepts.
  bool is_polyhedral() const noexcept;
  bool is_closed() const noexcept { return kind() != ConeKind::DeclaredClosure; }

  /// cone(rays) + span(lineality). Polyhedral kinds only.
  const ConeGenerators& generators() const;
  /// Rays followed by +-lineality vectors: every element is a nonnegative combination.
  std::vector<Vector> generator_list() const;
  /// Inward normals h (cone = {x : <h,x> >= 0}); equalities appear as +-h pairs. Polyhedral kinds only.
  const std::vector<Vector>& normals() const;

  /// The user-supplied V-rep generators or H-rep normals.
  const std::vector<Vector>& data() const;
  std::size_t psd_side() const;
  const Seminorm& ice_cream_seminorm() const;
  const ConePredicate& predicate() const;
  /// The declared closure for DeclaredClosure, otherwise the cone itself.
  const Cone& closure() const;

  std::string describe() const;

 private:
  struct Impl;
  explicit Cone(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// lin.space(K) = K ∩ -K, computed on the closure.
Subspace lineality_space(const Cone& k, const TolerancePolicy& tol = {});
bool is_proper(const Cone& k, const TolerancePolicy& tol = {});

struct ArchimedeanReport {
  bool archimedean = false;
  std::string reason;
  std::optional<Vector> witness;  // a point of the closure outside the cone
};

/// Proper and algebraically closed. Closed kinds reduce to properness; a declared closure is
/// searched for a point of the closure that the predicate rejects.
ArchimedeanReport is_archimedean(const Cone& k, const TolerancePolicy& tol = {}, std::uint64_t seed = 0);

/// Dual cone {y : <y, x> >= 0 for all x in K}. Polyhedral kinds only.
Cone dual_cone(const Cone& k);

/// V-rep to H-rep and back via double description (dimension <= 6).
Cone convert_representation(const Cone& k, const TolerancePolicy& tol = {});

/// Random element of the cone (for DeclaredClosure: of the predicate set). Generator
/// combinations use exponential weights; a fraction of samples lands on proper faces.
Vector sample_cone(const Cone& k, std::mt19937_64& rng);

}  // namespace ovs
