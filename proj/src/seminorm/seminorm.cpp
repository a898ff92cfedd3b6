#include "ovs/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "ovs/distance.hpp"
#include "ovs/eigen.hpp"
#include "ovs/errors.hpp"
#include "ovs/kernels.hpp"
#include "ovs/svec.hpp"

namespace ovs {

const char* to_string(SeminormKind k) {
  switch (k) {
    case SeminormKind::Lq: return "lq";
    case SeminormKind::WeightedLq: return "weighted_lq";
    case SeminormKind::PolytopeGauge: return "polytope_gauge";
    case SeminormKind::OrderUnit: return "order_unit";
    case SeminormKind::Pullback: return "pullback";
    case SeminormKind::OneMaxNormalized: return "one_max_normalized";
  }
  return "?";
}

struct Seminorm::Impl {
  SeminormKind kind = SeminormKind::Lq;
  std::size_t dim = 0;
  double q = 2.0;
  Vector weights;
  HPolytope polytope;
  std::shared_ptr<const Cone> cone;
  Vector unit;
  DenseMatrix matrix;
  std::shared_ptr<const Seminorm> inner;
  TolerancePolicy tol;

  // OrderUnit evaluation route
  std::vector<Vector> normals;
  std::vector<double> normal_u;
  bool closed_form = false;
  bool spectral = false;

  // OneMaxNormalized ball, computed on first use
  mutable std::once_flag ball_once;
  mutable std::optional<HPolytope> ball;
};

namespace {

double lq_value(const double* x, std::size_t n, double q) {
  const auto& k = kernels::active();
  if (q == 1.0) return k.sum_abs(x, n);
  if (q == 2.0) return std::sqrt(k.sum_sq(x, n));
  return k.max_abs(x, n);
}

void check_q(double q) {
  if (q != 1.0 && q != 2.0 && q != kInf)
    throw UnsupportedError("lq: exponent must be 1, 2 or inf (got " + std::to_string(q) + ")");
}

std::string q_name(double q) { return q == kInf ? "inf" : std::to_string(static_cast<int>(q)); }

bool interior_point(const Cone& k, const Vector& u, const TolerancePolicy& tol) {
  const double scale = std::max(1.0, norm_inf(u));
  switch (k.kind()) {
    case ConeKind::Psd: return min_eigenvalue(smat(u)) > tol.abs_tol * scale;
    case ConeKind::IceCream: {
      const std::size_t n = k.dim() - 1;
      return k.ice_cream_seminorm().eval(slice(u, 0, n)) < u[n] - tol.abs_tol * scale;
    }
    case ConeKind::DeclaredClosure: return k.contains(u, tol) && interior_point(k.closure(), u, tol);
    default: break;
  }
  if (!k.is_polyhedral()) return false;
  if (k.kind() == ConeKind::Full) return true;
  const auto& normals = k.normals();
  for (const auto& h : normals)
    if (dot(h, u) <= tol.abs_tol * scale * norm2(h)) return false;
  return !normals.empty() || k.kind() == ConeKind::Full;
}

// inf {t > 0 : t u -+ x in K} by bracketing and bisection on closed-cone membership.
double order_unit_bisection(const Cone& k, const Vector& u, const Vector& x, const TolerancePolicy& tol) {
  const Cone& cl = k.closure();
  auto feasible = [&](double t) { return cl.contains(t * u - x, tol) && cl.contains(t * u + x, tol); };
  if (norm_inf(x) == 0.0) return 0.0;
  double hi = 1.0;
  int grow = 0;
  while (!feasible(hi)) {
    hi *= 2.0;
    if (++grow > 200) throw SolverError("order-unit seminorm: no bracket found");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

Seminorm Seminorm::lq(std::size_t dim, double q) {
  if (dim == 0) throw DimensionError("lq: zero dimension");
  check_q(q);
  auto impl = std::make_shared<Impl>();
  impl->kind = SeminormKind::Lq;
  impl->dim = dim;
  impl->q = q;
  return Seminorm(impl);
}

Seminorm Seminorm::weighted_lq(Vector weights, double q) {
  if (weights.empty()) throw DimensionError("weighted_lq: zero dimension");
  check_q(q);
  weights.require_finite("weighted_lq weights");
  for (double w : weights)
    if (!(w > 0.0)) throw std::invalid_argument("weighted_lq: weights must be positive");
  auto impl = std::make_shared<Impl>();
  impl->kind = SeminormKind::WeightedLq;
  impl->dim = weights.size();
  impl->q = q;
  impl->weights = std::move(weights);
  return Seminorm(impl);
}

Seminorm Seminorm::polytope_gauge(HPolytope ball, const TolerancePolicy& tol) {
  ball.validate();
  if (ball.dim == 0) throw DimensionError("polytope_gauge: zero dimension");
  for (double c : ball.offsets)
    if (!(c > 0.0)) throw PreconditionError("polytope_gauge: 0 must lie in the interior (offsets > 0)");
  if (!ball.is_symmetric(1e-9)) throw PreconditionError("polytope_gauge: polytope is not symmetric");
  auto impl = std::make_shared<Impl>();
  impl->kind = SeminormKind::PolytopeGauge;
  impl->dim = ball.dim;
  impl->polytope = std::move(ball);
  impl->tol = tol;
  return Seminorm(impl);
}

Seminorm Seminorm::order_unit(Cone k, Vector u, const TolerancePolicy& tol) {
  if (u.size() != k.dim()) throw DimensionError("order_unit: unit dimension mismatch");
  u.require_finite("order_unit unit");
  if (!k.contains(u, tol)) throw PreconditionError("not an order unit for this representation: u is not in the cone", u.values());
  if (k.closure().contains(-u, tol))
    throw PreconditionError("not an order unit for this representation: -u lies in the cone", u.values());
  if (!interior_point(k, u, tol))
    throw PreconditionError("not an order unit for this representation: u is not interior", u.values());

  auto impl = std::make_shared<Impl>();
  impl->kind = SeminormKind::OrderUnit;
  impl->dim = k.dim();
  impl->tol = tol;
  const Cone& cl = k.closure();
  if (cl.is_polyhedral()) {
    for (const auto& h : cl.normals()) {
      impl->normals.push_back(h);
      impl->normal_u.push_back(dot(h, u));
    }
    impl->closed_form = true;
  } else if (cl.kind() == ConeKind::Psd) {
    impl->spectral = max_abs_diff(u, svec(DenseMatrix::identity(cl.psd_side()))) == 0.0;
  }
  impl->cone = std::make_shared<const Cone>(std::move(k));
  impl->unit = std::move(u);
  return Seminorm(impl);
}

Seminorm Seminorm::pullback(DenseMatrix a, Seminorm inner) {
  if (a.rows() != inner.dim()) throw DimensionError("pullback: matrix rows must match the inner seminorm dimension");
  if (a.cols() == 0) throw DimensionError("pullback: zero dimension");
  for (std::size_t i = 0; i < a.rows() * a.cols(); ++i)
    if (!std::isfinite(a.data()[i])) throw std::invalid_argument("pullback: non-finite matrix entry");
  auto impl = std::make_shared<Impl>();
  impl->kind = SeminormKind::Pullback;
  impl->dim = a.cols();
  impl->matrix = std::move(a);
  impl->inner = std::make_shared<const Seminorm>(std::move(inner));
  return Seminorm(impl);
}

Seminorm Seminorm::one_max_normalized(Cone k, Seminorm base, const TolerancePolicy& tol) {
  if (k.dim() != base.dim()) throw DimensionError("one_max_normalized: cone and seminorm dimensions differ");
  // Fail early when the distance dispatch has no method for this pair.
  (void)select_distance_method(k, base);
  auto impl = std::make_shared<Impl>();
  impl->kind = SeminormKind::OneMaxNormalized;
  impl->dim = k.dim();
  impl->cone = std::make_shared<const Cone>(std::move(k));
  impl->inner = std::make_shared<const Seminorm>(std::move(base));
  impl->tol = tol;
  return Seminorm(impl);
}

SeminormKind Seminorm::kind() const noexcept { return impl_->kind; }
std::size_t Seminorm::dim() const noexcept { return impl_->dim; }

double Seminorm::eval(const Vector& x) const {
  if (x.size() != impl_->dim) throw DimensionError("Seminorm::eval: dimension mismatch");
  const Impl& s = *impl_;
  switch (s.kind) {
    case SeminormKind::Lq: return lq_value(x.data(), x.size(), s.q);
    case SeminormKind::WeightedLq: {
      Vector wx(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) wx[i] = s.weights[i] * x[i];
      return lq_value(wx.data(), wx.size(), s.q);
    }
    case SeminormKind::PolytopeGauge: {
      double v = 0.0;
      for (std::size_t i = 0; i < s.polytope.size(); ++i)
        v = std::max(v, dot(s.polytope.normals[i], x) / s.polytope.offsets[i]);
      return v;
    }
    case SeminormKind::OrderUnit: {
      if (s.closed_form) {
        double v = 0.0;
        for (std::size_t i = 0; i < s.normals.size(); ++i) v = std::max(v, std::fabs(dot(s.normals[i], x)) / s.normal_u[i]);
        return v;
      }
      if (s.spectral) {
        const auto e = jacobi_eigen(smat(x));
        return std::max(std::fabs(e.values[0]), std::fabs(e.values[e.values.size() - 1]));
      }
      return order_unit_bisection(*s.cone, s.unit, x, s.tol);
    }
    case SeminormKind::Pullback: return s.inner->eval(s.matrix.apply(x));
    case SeminormKind::OneMaxNormalized:
      return std::max(dist_to_cone(x, *s.cone, *s.inner, s.tol), dist_to_cone(-x, *s.cone, *s.inner, s.tol));
  }
  return 0.0;
}

double Seminorm::q() const {
  if (kind() != SeminormKind::Lq && kind() != SeminormKind::WeightedLq) throw std::logic_error("q: not an lq seminorm");
  return impl_->q;
}

const Vector& Seminorm::weights() const {
  if (kind() != SeminormKind::WeightedLq) throw std::logic_error("weights: not a weighted seminorm");
  return impl_->weights;
}

const HPolytope& Seminorm::polytope() const {
  if (kind() != SeminormKind::PolytopeGauge) throw std::logic_error("polytope: not a polytope gauge");
  return impl_->polytope;
}

const Cone& Seminorm::cone() const {
  if (!impl_->cone) throw std::logic_error("cone: seminorm carries no cone");
  return *impl_->cone;
}

const Vector& Seminorm::unit() const {
  if (kind() != SeminormKind::OrderUnit) throw std::logic_error("unit: not an order-unit seminorm");
  return impl_->unit;
}

const DenseMatrix& Seminorm::matrix() const {
  if (kind() != SeminormKind::Pullback) throw std::logic_error("matrix: not a pullback");
  return impl_->matrix;
}

const Seminorm& Seminorm::inner() const {
  if (!impl_->inner) throw std::logic_error("inner: seminorm has no inner seminorm");
  return *impl_->inner;
}

const TolerancePolicy& Seminorm::tolerance() const { return impl_->tol; }

std::string Seminorm::describe() const {
  std::ostringstream os;
  const Impl& s = *impl_;
  switch (s.kind) {
    case SeminormKind::Lq: os << "l" << q_name(s.q) << "(" << s.dim << ")"; break;
    case SeminormKind::WeightedLq: os << "weighted_l" << q_name(s.q) << to_string(s.weights, 6); break;
    case SeminormKind::PolytopeGauge: os << "polytope_gauge(" << s.polytope.size() << " halfspaces)"; break;
    case SeminormKind::OrderUnit: os << "order_unit(" << s.cone->describe() << ", u=" << to_string(s.unit, 6) << ")"; break;
    case SeminormKind::Pullback: os << "pullback(" << s.matrix.rows() << "x" << s.matrix.cols() << ", " << s.inner->describe() << ")"; break;
    case SeminormKind::OneMaxNormalized: os << "one_max(" << s.inner->describe() << " over " << s.cone->describe() << ")"; break;
  }
  return os.str();
}

AlphaOmega order_unit_alpha_omega(const Cone& k, const Vector& u, const Vector& x, const TolerancePolicy& tol) {
  if (u.size() != k.dim() || x.size() != k.dim()) throw DimensionError("order_unit_alpha_omega: dimension mismatch");
  const Cone& cl = k.closure();
  if (!cl.is_polyhedral()) throw UnsupportedError("order_unit_alpha_omega: cone has no H-representation");
  const auto& normals = cl.normals();
  if (normals.empty()) throw PreconditionError("not an order unit for this representation: cone has no facets");
  AlphaOmega r{kInf, -kInf};
  const double scale = std::max(1.0, norm_inf(u));
  for (const auto& h : normals) {
    const double hu = dot(h, u);
    if (hu <= tol.abs_tol * scale * norm2(h))
      throw PreconditionError("not an order unit for this representation", h.values());
    const double v = dot(h, x) / hu;
    r.alpha = std::min(r.alpha, v);
    r.omega = std::max(r.omega, v);
  }
  return r;
}

std::optional<HPolytope> polyhedral_ball(const Seminorm& p, const TolerancePolicy& tol) {
  const std::size_t n = p.dim();
  HPolytope ball;
  ball.dim = n;
  switch (p.kind()) {
    case SeminormKind::Lq:
    case SeminormKind::WeightedLq: {
      const double q = p.q();
      if (q == 2.0) return std::nullopt;
      const Vector w = p.kind() == SeminormKind::WeightedLq ? p.weights() : Vector(n, 1.0);
      if (q == kInf) {
        for (std::size_t i = 0; i < n; ++i) {
          ball.add(w[i] * Vector::unit(n, i), 1.0);
          ball.add(-w[i] * Vector::unit(n, i), 1.0);
        }
        return ball;
      }
      if (n > 12) throw UnsupportedError("l1 unit ball: dimension too large for an explicit H-representation");
      for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Vector h(n);
        for (std::size_t i = 0; i < n; ++i) h[i] = (mask >> i & 1u) ? -w[i] : w[i];
        ball.add(std::move(h), 1.0);
      }
      return ball;
    }
    case SeminormKind::PolytopeGauge: return p.polytope();
    case SeminormKind::OrderUnit: {
      const Cone& cl = p.cone().closure();
      if (!cl.is_polyhedral()) return std::nullopt;
      for (const auto& h : cl.normals()) {
        const double hu = dot(h, p.unit());
        ball.add(h, hu);
        ball.add(-h, hu);
      }
      return ball;
    }
    case SeminormKind::Pullback: {
      const auto inner = polyhedral_ball(p.inner(), tol);
      if (!inner) return std::nullopt;
      const DenseMatrix& a = p.matrix();
      for (std::size_t i = 0; i < inner->size(); ++i) ball.add(a.apply_transpose(inner->normals[i]), inner->offsets[i]);
      return ball;
    }
    case SeminormKind::OneMaxNormalized: {
      // {d(x) <= 1, d(-x) <= 1} = (B + K) ∩ (B - K), the full hull of the base ball.
      const Seminorm::Impl& s = *p.impl_;
      std::call_once(s.ball_once, [&] {
        const Cone& cl = s.cone->closure();
        const auto base = polyhedral_ball(*s.inner, tol);
        if (!base || !cl.is_polyhedral() || n > kMaxConversionDim) return;
        s.ball = full_hull(*base, cl.generators(), tol).hrep;
      });
      return s.ball;
    }
  }
  return std::nullopt;
}

HPolytope unit_ball_hrep(const Seminorm& p, const TolerancePolicy& tol) {
  auto ball = polyhedral_ball(p, tol);
  if (!ball) throw UnsupportedError("unit_ball_hrep: " + p.describe() + " is not polyhedral");
  return *ball;
}

std::optional<DenseMatrix> euclidean_factor(const Seminorm& p) {
  switch (p.kind()) {
    case SeminormKind::Lq:
      if (p.q() == 2.0) return DenseMatrix::identity(p.dim());
      return std::nullopt;
    case SeminormKind::WeightedLq:
      if (p.q() == 2.0) return DenseMatrix::diagonal(p.weights());
      return std::nullopt;
    case SeminormKind::Pullback: {
      auto inner = euclidean_factor(p.inner());
      if (!inner) return std::nullopt;
      return *inner * p.matrix();
    }
    default: return std::nullopt;
  }
}

Subspace seminorm_kernel(const Seminorm& p, const TolerancePolicy& tol) {
  const std::size_t n = p.dim();
  switch (p.kind()) {
    case SeminormKind::Lq:
    case SeminormKind::WeightedLq: return Subspace(n);
    case SeminormKind::PolytopeGauge:
      return null_space(DenseMatrix::from_rows(p.polytope().normals, n), tol);
    case SeminormKind::OrderUnit: return lineality_space(p.cone().closure(), tol);
    case SeminormKind::Pullback: {
      const Subspace inner = seminorm_kernel(p.inner(), tol);
      const DenseMatrix& a = p.matrix();
      if (inner.is_zero()) return null_space(a, tol);
      const auto comp = inner.complement_basis(tol.abs_tol);
      if (comp.empty()) return Subspace::full(n);
      return null_space(DenseMatrix::from_rows(comp, a.rows()) * a, tol);
    }
    case SeminormKind::OneMaxNormalized: {
      const Cone& cl = p.cone().closure();
      const Subspace base = seminorm_kernel(p.inner(), tol);
      if (cl.is_polyhedral()) {
        auto gens = cl.generator_list();
        for (const auto& b : base.basis()) {
          gens.push_back(b);
          gens.push_back(-b);
        }
        return lineality_space(Cone::vpoly(n, gens), tol);
      }
      if (base.is_zero()) return lineality_space(cl, tol);
      throw UnsupportedError("seminorm_kernel: degenerate base seminorm over a non-polyhedral cone");
    }
  }
  return Subspace(n);
}

}  // namespace ovs
