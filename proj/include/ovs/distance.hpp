#pragma once

#include <optional>
#include <string>

#include "ovs/cone.hpp"
#include "ovs/linalg.hpp"
#include "ovs/seminorm.hpp"
#include "ovs/tolerance.hpp"

namespace ovs {

enum class DistanceMethod {
  Auto,
  Trivial,              // K = R^n (0) or K = {0} (p(x))
  OrthantClosedForm,    // ||x^-|| under (weighted) lq
  SpectralClosedForm,   // PSD with order unit I: max(0, -lambda_min); PSD with Frobenius: ||a^-||_F
  LP,                   // polyhedral K, polyhedral p
  NNLS,                 // polyhedral K, p(x) = ||L x||_2
  Bisection,            // bisection on lambda with an LP or NNLS feasibility test
};

const char* to_string(DistanceMethod m);

/// The admissible (cone, seminorm) pairs and their methods, one per line.
std::string distance_dispatch_table();

/// Method used by Auto. Throws UnsupportedError (listing the table) when none applies.
DistanceMethod select_distance_method(const Cone& k, const Seminorm& p);

struct DistanceResult {
  double value = 0.0;
  DistanceMethod method = DistanceMethod::Auto;
  std::optional<Vector> witness;  // minimizer y* in the closure of K, when the method yields one
};

/// d(x, K) = inf_{y in K} p(x - y), measured to the closure of K.
DistanceResult distance(const Vector& x, const Cone& k, const Seminorm& p, const TolerancePolicy& tol = {},
                        DistanceMethod method = DistanceMethod::Auto);

double dist_to_cone(const Vector& x, const Cone& k, const Seminorm& p, const TolerancePolicy& tol = {},
                    DistanceMethod method = DistanceMethod::Auto);

/// A minimizer y* in K. Throws UnsupportedError for bisection.
Vector dist_witness(const Vector& x, const Cone& k, const Seminorm& p, const TolerancePolicy& tol = {},
                    DistanceMethod method = DistanceMethod::Auto);

}  // namespace ovs
