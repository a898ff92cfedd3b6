#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "ovs/cone.hpp"
#include "ovs/linalg.hpp"
#include "ovs/polyhedra.hpp"
#include "ovs/subspace.hpp"
#include "ovs/tolerance.hpp"

namespace ovs {

enum class SeminormKind { Lq, WeightedLq, PolytopeGauge, OrderUnit, Pullback, OneMaxNormalized };

const char* to_string(SeminormKind k);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Evaluable seminorm. Cheap to copy; immutable.
class Seminorm {
 public:
  /// q in {1, 2, inf}.
  static Seminorm lq(std::size_t dim, double q);
  /// x -> || (w_i x_i) ||_q with positive weights.
  static Seminorm weighted_lq(Vector weights, double q);
  /// Minkowski functional of a symmetric polytope with 0 in its interior.
  static Seminorm polytope_gauge(HPolytope ball, const TolerancePolicy& tol = {});
  /// mu_u(x) = inf {t > 0 : -t u <= x <= t u}. Rejects u unless it is an order unit of K.
  static Seminorm order_unit(Cone k, Vector u, const TolerancePolicy& tol = {});
  /// x -> inner(A x).
  static Seminorm pullback(DenseMatrix a, Seminorm inner);
  /// x -> max(d(x, K), d(-x, K)) with d measured by `base`.
  static Seminorm one_max_normalized(Cone k, Seminorm base, const TolerancePolicy& tol = {});

  SeminormKind kind() const noexcept;
  std::size_t dim() const noexcept;

  double eval(const Vector& x) const;
  double operator()(const Vector& x) const { return eval(x); }

  double q() const;
  const Vector& weights() const;
  const HPolytope& polytope() const;
  const Cone& cone() const;  // OrderUnit and OneMaxNormalized
  const Vector& unit() const;
  const DenseMatrix& matrix() const;
  const Seminorm& inner() const;  // Pullback inner, OneMaxNormalized base
  const TolerancePolicy& tolerance() const;

  std::string describe() const;

 private:
  friend std::optional<HPolytope> polyhedral_ball(const Seminorm&, const TolerancePolicy&);
  struct Impl;
  explicit Seminorm(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct AlphaOmega {
  double alpha = 0.0;
  double omega = 0.0;
  double mu() const { return std::max(-alpha, omega); }
};

/// alpha_u(x) = min_h <h,x>/<h,u>, omega_u(x) = max_h <h,x>/<h,u> over the normals of K.
/// Throws PreconditionError unless <h,u> > 0 for every normal.
AlphaOmega order_unit_alpha_omega(const Cone& k, const Vector& u, const Vector& x, const TolerancePolicy& tol = {});

/// Closed unit ball {p <= 1} as an H-polytope when p is polyhedral.
std::optional<HPolytope> polyhedral_ball(const Seminorm& p, const TolerancePolicy& tol = {});
/// As polyhedral_ball, throwing UnsupportedError("not polyhedral") otherwise.
HPolytope unit_ball_hrep(const Seminorm& p, const TolerancePolicy& tol = {});

/// A matrix L with p(x) = ||L x||_2, when one exists in closed form.
std::optional<DenseMatrix> euclidean_factor(const Seminorm& p);

/// {x : p(x) = 0}.
Subspace seminorm_kernel(const Seminorm& p, const TolerancePolicy& tol = {});

}  // namespace ovs
