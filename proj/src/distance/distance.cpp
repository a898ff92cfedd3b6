#include "ovs/distance.hpp"

#include <algorithm>
#include <cmath>

#include "ovs/eigen.hpp"
#include "ovs/errors.hpp"
#include "ovs/kernels.hpp"
#include "ovs/lp.hpp"
#include "ovs/nnls.hpp"
#include "ovs/svec.hpp"

namespace ovs {

const char* to_string(DistanceMethod m) {
  switch (m) {
    case DistanceMethod::Auto: return "auto";
    case DistanceMethod::Trivial: return "trivial";
    case DistanceMethod::OrthantClosedForm: return "orthant-closed-form";
    case DistanceMethod::SpectralClosedForm: return "spectral-closed-form";
    case DistanceMethod::LP: return "lp";
    case DistanceMethod::NNLS: return "nnls";
    case DistanceMethod::Bisection: return "bisection";
  }
  return "?";
}

std::string distance_dispatch_table() {
  return "  full cone, any seminorm                  -> 0\n"
         "  zero cone, any seminorm                  -> p(x)\n"
         "  orthant, lq / weighted lq                -> closed form ||x^-||\n"
         "  psd, order unit with u = identity        -> spectral max(0, -lambda_min)\n"
         "  psd, l2 (Frobenius)                      -> spectral ||a^-||_F\n"
         "  polyhedral cone, polyhedral seminorm     -> lp\n"
         "  polyhedral cone, euclidean-type seminorm -> nnls\n"
         "  declared closure                         -> as for the declared closure\n"
         "  bisection (explicit request)             -> polyhedral cone with an lp or nnls feasibility test\n";
}

namespace {

[[noreturn]] void unsupported(const Cone& k, const Seminorm& p, const char* why) {
  throw UnsupportedError(std::string("no distance method for cone ") + k.describe() + " with seminorm " +
                         p.describe() + " (" + why + "); supported combinations:\n" + distance_dispatch_table());
}

bool is_identity_order_unit_on_psd(const Cone& k, const Seminorm& p) {
  if (p.kind() != SeminormKind::OrderUnit) return false;
  const Cone& pc = p.cone().closure();
  if (pc.kind() != ConeKind::Psd || pc.psd_side() != k.psd_side()) return false;
  return max_abs_diff(p.unit(), svec(DenseMatrix::identity(k.psd_side()))) == 0.0;
}

bool is_plain_l2(const Seminorm& p) { return p.kind() == SeminormKind::Lq && p.q() == 2.0; }

struct Gauge {
  std::vector<Vector> rows;  // p(z) = max(0, max_i <rows_i, z>)
};

Gauge gauge_rows(const HPolytope& ball) {
  Gauge g;
  for (std::size_t i = 0; i < ball.size(); ++i) g.rows.push_back((1.0 / ball.offsets[i]) * ball.normals[i]);
  return g;
}

double gauge_value(const Gauge& g, const Vector& z) {
  double v = 0.0;
  for (const auto& r : g.rows) v = std::max(v, dot(r, z));
  return v;
}

Vector combine(const std::vector<Vector>& gens, const Vector& c, std::size_t dim) {
  Vector y(dim);
  for (std::size_t j = 0; j < gens.size(); ++j)
    if (c[j] != 0.0) y += c[j] * gens[j];
  return y;
}

// min t s.t. t + <r_i, G c> >= <r_i, x>, c >= 0, t >= 0.
DistanceResult lp_distance(const Vector& x, const std::vector<Vector>& gens, const Gauge& g,
                           const TolerancePolicy& tol) {
  DistanceResult out;
  out.method = DistanceMethod::LP;
  if (gens.empty()) {
    out.value = gauge_value(g, x);
    out.witness = Vector(x.size());
    return out;
  }
  const std::size_t m = gens.size();
  LPProblem lp;
  lp.objective = Vector(m + 1);
  lp.objective[m] = 1.0;
  lp.constraints = DenseMatrix(g.rows.size(), m + 1);
  lp.rhs = Vector(g.rows.size());
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) lp.constraints(i, j) = dot(g.rows[i], gens[j]);
    lp.constraints(i, m) = 1.0;
    lp.rhs[i] = dot(g.rows[i], x);
  }
  lp.kinds.assign(g.rows.size(), RowKind::GreaterEqual);
  const LPResult r = solve_lp(lp, tol);
  if (r.status != LpStatus::Optimal)
    throw SolverError(std::string("distance LP ended with status ") + to_string(r.status));
  out.value = std::max(0.0, r.value);
  out.witness = combine(gens, slice(r.solution, 0, m), x.size());
  return out;
}

bool lp_feasible(const Vector& x, const std::vector<Vector>& gens, const Gauge& g, double lambda,
                 const TolerancePolicy& tol) {
  if (gens.empty()) return gauge_value(g, x) <= lambda;
  const std::size_t m = gens.size();
  LPProblem lp;
  lp.objective = Vector(m);
  lp.constraints = DenseMatrix(g.rows.size(), m);
  lp.rhs = Vector(g.rows.size());
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) lp.constraints(i, j) = dot(g.rows[i], gens[j]);
    lp.rhs[i] = dot(g.rows[i], x) - lambda;
  }
  lp.kinds.assign(g.rows.size(), RowKind::GreaterEqual);
  return solve_lp(lp, tol).status == LpStatus::Optimal;
}

DistanceResult nnls_distance(const Vector& x, const std::vector<Vector>& gens, const DenseMatrix& l,
                             const TolerancePolicy& tol) {
  DistanceResult out;
  out.method = DistanceMethod::NNLS;
  const Vector lx = l.apply(x);
  if (gens.empty()) {
    out.value = norm2(lx);
    out.witness = Vector(x.size());
    return out;
  }
  const DenseMatrix lg = l * DenseMatrix::from_columns(gens, x.size());
  const NnlsResult r = solve_nnls(lg, lx, tol);
  out.value = r.residual_norm;
  out.witness = combine(gens, r.coefficients, x.size());
  return out;
}

DistanceResult orthant_distance(const Vector& x, const Seminorm& p) {
  DistanceResult out;
  out.method = DistanceMethod::OrthantClosedForm;
  const double q = p.q();
  Vector neg(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = p.kind() == SeminormKind::WeightedLq ? p.weights()[i] : 1.0;
    neg[i] = w * std::max(0.0, -x[i]);
  }
  const auto& k = kernels::active();
  if (q == 1.0)
    out.value = k.sum_abs(neg.data(), neg.size());
  else if (q == 2.0)
    out.value = std::sqrt(k.sum_sq(neg.data(), neg.size()));
  else
    out.value = k.max_abs(neg.data(), neg.size());
  Vector y = x;
  for (auto& v : y) v = std::max(v, 0.0);
  out.witness = std::move(y);
  return out;
}

DistanceResult spectral_distance(const Vector& x, bool frobenius) {
  DistanceResult out;
  out.method = DistanceMethod::SpectralClosedForm;
  const SymmetricEigen e = jacobi_eigen(smat(x));
  if (frobenius) {
    double s = 0.0;
    for (double v : e.values) s += v < 0.0 ? v * v : 0.0;
    out.value = std::sqrt(s);
  } else {
    out.value = std::max(0.0, -e.values[0]);
  }
  out.witness = svec(spectral_apply(e, [](double v) { return v > 0.0 ? v : 0.0; }));
  return out;
}

}  // namespace

DistanceMethod select_distance_method(const Cone& k, const Seminorm& p) {
  if (k.dim() != p.dim()) throw DimensionError("distance: cone and seminorm dimensions differ");
  const Cone& c = k.closure();
  switch (c.kind()) {
    case ConeKind::Full:
    case ConeKind::Zero: return DistanceMethod::Trivial;
    case ConeKind::Orthant:
      if (p.kind() == SeminormKind::Lq || p.kind() == SeminormKind::WeightedLq) return DistanceMethod::OrthantClosedForm;
      break;
    case ConeKind::Psd:
      if (is_identity_order_unit_on_psd(c, p) || is_plain_l2(p)) return DistanceMethod::SpectralClosedForm;
      unsupported(k, p, "psd cone needs the identity order unit or the Frobenius norm");
    case ConeKind::IceCream: unsupported(k, p, "ice-cream cones are not in the dispatch table");
    default: break;
  }
  if (!c.is_polyhedral()) unsupported(k, p, "cone is not polyhedral");
  if (polyhedral_ball(p)) return DistanceMethod::LP;
  if (euclidean_factor(p)) return DistanceMethod::NNLS;
  unsupported(k, p, "seminorm is neither polyhedral nor euclidean-type");
}

DistanceResult distance(const Vector& x, const Cone& k, const Seminorm& p, const TolerancePolicy& tol,
                        DistanceMethod method) {
  if (x.size() != k.dim() || x.size() != p.dim()) throw DimensionError("distance: dimension mismatch");
  x.require_finite("distance point");
  const Cone& c = k.closure();
  if (method == DistanceMethod::Auto) method = select_distance_method(k, p);

  switch (method) {
    case DistanceMethod::Trivial: {
      DistanceResult r;
      r.method = method;
      if (c.kind() == ConeKind::Full) {
        r.value = 0.0;
        r.witness = x;
      } else if (c.kind() == ConeKind::Zero) {
        r.value = p.eval(x);
        r.witness = Vector(x.size());
      } else {
        unsupported(k, p, "trivial method needs the zero or full cone");
      }
      return r;
    }
    case DistanceMethod::OrthantClosedForm:
      if (c.kind() != ConeKind::Orthant || (p.kind() != SeminormKind::Lq && p.kind() != SeminormKind::WeightedLq))
        unsupported(k, p, "orthant closed form needs the orthant and an lq seminorm");
      return orthant_distance(x, p);
    case DistanceMethod::SpectralClosedForm:
      if (c.kind() != ConeKind::Psd) unsupported(k, p, "spectral closed form needs the psd cone");
      if (is_identity_order_unit_on_psd(c, p)) return spectral_distance(x, false);
      if (is_plain_l2(p)) return spectral_distance(x, true);
      unsupported(k, p, "spectral closed form needs the identity order unit or the Frobenius norm");
    case DistanceMethod::LP: {
      if (!c.is_polyhedral()) unsupported(k, p, "lp needs a polyhedral cone");
      const auto ball = polyhedral_ball(p, tol);
      if (!ball) unsupported(k, p, "lp needs a polyhedral seminorm");
      return lp_distance(x, c.generator_list(), gauge_rows(*ball), tol);
    }
    case DistanceMethod::NNLS: {
      if (!c.is_polyhedral()) unsupported(k, p, "nnls needs a polyhedral cone");
      const auto l = euclidean_factor(p);
      if (!l) unsupported(k, p, "nnls needs a euclidean-type seminorm");
      return nnls_distance(x, c.generator_list(), *l, tol);
    }
    case DistanceMethod::Bisection: {
      if (!c.is_polyhedral()) unsupported(k, p, "bisection needs a polyhedral cone");
      const auto gens = c.generator_list();
      const auto ball = polyhedral_ball(p, tol);
      const auto l = ball ? std::nullopt : euclidean_factor(p);
      if (!ball && !l) unsupported(k, p, "bisection needs an lp or nnls feasibility test");
      const std::optional<Gauge> g = ball ? std::optional<Gauge>(gauge_rows(*ball)) : std::nullopt;
      std::optional<DenseMatrix> lg;
      if (l && !gens.empty()) lg = *l * DenseMatrix::from_columns(gens, x.size());
      auto feasible = [&](double lambda) {
        if (g) return lp_feasible(x, gens, *g, lambda, tol);
        if (gens.empty()) return norm2(l->apply(x)) <= lambda;
        return solve_nnls(*lg, l->apply(x), tol).residual_norm <= lambda;
      };
      // 0 lies in K, so d(x) <= p(x).
      double lo = 0.0, hi = p.eval(x);
      const double stop = 1e-3 * tol.bisection_tol * std::max(1.0, hi);
      int it = 0;
      while (hi - lo > stop) {
        if (++it > tol.max_iter) throw SolverError("distance bisection: iteration limit exceeded");
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? hi : lo) = mid;
      }
      DistanceResult r;
      r.method = method;
      r.value = 0.5 * (lo + hi);
      return r;
    }
    case DistanceMethod::Auto: break;
  }
  unsupported(k, p, "unknown method");
}

double dist_to_cone(const Vector& x, const Cone& k, const Seminorm& p, const TolerancePolicy& tol,
                    DistanceMethod method) {
  return distance(x, k, p, tol, method).value;
}

Vector dist_witness(const Vector& x, const Cone& k, const Seminorm& p, const TolerancePolicy& tol,
                    DistanceMethod method) {
  const DistanceResult r = distance(x, k, p, tol, method);
  if (!r.witness) throw UnsupportedError(std::string("dist_witness: method ") + to_string(r.method) + " yields no minimizer");
  return *r.witness;
}

}  // namespace ovs
