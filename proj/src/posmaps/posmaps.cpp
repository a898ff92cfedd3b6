#include "ovs/posmaps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ovs/eigen.hpp"
#include "ovs/errors.hpp"
#include "ovs/svec.hpp"

namespace ovs {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Indeterminate: return "indeterminate";
    case Verdict::PreconditionFailed: return "precondition-failed";
  }
  return "?";
}

AouSpace aou_space(Cone cone, Vector unit, const TolerancePolicy& tol) {
  Seminorm mu = Seminorm::order_unit(cone, unit, tol);
  return AouSpace{std::move(cone), std::move(unit), std::move(mu)};
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const Cone* plain_cone(const MapSpace& s) {
  if (const auto* e = std::get_if<SeminormedSpace>(&s)) return &e->cone;
  if (const auto* a = std::get_if<AouSpace>(&s)) return &a->cone;
  return nullptr;
}

// Projector onto the orthogonal complement of n, as a matrix.
DenseMatrix complement_projector(const Subspace& n) {
  const std::size_t d = n.ambient_dim();
  DenseMatrix p(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const Vector c = quotient_representative(Vector::unit(d, j), n);
    for (std::size_t i = 0; i < d; ++i) p(i, j) = c[i];
  }
  return p;
}

double matrix_scale(const DenseMatrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s = std::max(s, std::fabs(m(i, j)));
  return s;
}

}  // namespace

std::size_t space_dim(const MapSpace& s) {
  return std::visit(Overloaded{[](const SeminormedSpace& e) { return e.dim(); },
                               [](const UnitizedSpace& u) { return u.coord_dim(); },
                               [](const AouSpace& a) { return a.cone.dim(); }},
                    s);
}

bool space_contains(const MapSpace& s, const Vector& v, const TolerancePolicy& tol) {
  if (v.size() != space_dim(s)) throw DimensionError("space_contains: dimension mismatch");
  return std::visit(Overloaded{[&](const SeminormedSpace& e) { return e.cone.contains(v, tol); },
                               [&](const UnitizedSpace& u) { return unitized_contains(u, from_coordinates(v)); },
                               [&](const AouSpace& a) { return a.cone.contains(v, tol); }},
                    s);
}

double space_norm(const MapSpace& s, const Vector& v) {
  if (v.size() != space_dim(s)) throw DimensionError("space_norm: dimension mismatch");
  return std::visit(Overloaded{[&](const SeminormedSpace& e) { return e.seminorm.eval(v); },
                               [&](const UnitizedSpace& u) { return order_unit_norm(u, from_coordinates(v)).norm; },
                               [&](const AouSpace& a) { return a.norm.eval(v); }},
                    s);
}

std::optional<Vector> space_unit(const MapSpace& s) {
  return std::visit(Overloaded{[](const SeminormedSpace& e) -> std::optional<Vector> {
                                 if (e.seminorm.kind() == SeminormKind::OrderUnit) return e.seminorm.unit();
                                 return std::nullopt;
                               },
                               [](const UnitizedSpace& u) -> std::optional<Vector> { return to_coordinates(u.unit()); },
                               [](const AouSpace& a) -> std::optional<Vector> { return a.unit; }},
                    s);
}

std::optional<std::vector<Vector>> unitized_cone_generators(const UnitizedSpace& u, const TolerancePolicy& tol) {
  const Cone& cl = u.base().cone.closure();
  if (!cl.is_polyhedral()) return std::nullopt;
  const auto ball = polyhedral_ball(u.base().seminorm, tol);
  if (!ball) return std::nullopt;
  VPolyhedron vp;
  try {
    vp = vertex_enumeration(*ball, tol);
  } catch (const UnsupportedError&) {
    return std::nullopt;
  }
  std::vector<Vector> gens;
  for (const auto& g : cl.generator_list()) gens.push_back(concat(g, Vector{0.0}));
  for (const auto& v : vp.vertices) gens.push_back(concat(v, Vector{1.0}));
  for (const auto& r : vp.rays) gens.push_back(concat(r, Vector{0.0}));
  for (const auto& b : u.lineality().basis()) {
    gens.push_back(concat(b, Vector{0.0}));
    gens.push_back(concat(-b, Vector{0.0}));
  }
  return gens;
}

std::optional<std::vector<Vector>> space_cone_generators(const MapSpace& s, const TolerancePolicy& tol) {
  if (const Cone* k = plain_cone(s)) {
    const Cone& cl = k->closure();
    if (!cl.is_polyhedral()) return std::nullopt;
    return cl.generator_list();
  }
  return unitized_cone_generators(std::get<UnitizedSpace>(s), tol);
}

std::optional<std::vector<Vector>> space_cone_normals(const MapSpace& s, const TolerancePolicy& tol) {
  if (const Cone* k = plain_cone(s)) {
    const Cone& cl = k->closure();
    if (!cl.is_polyhedral()) return std::nullopt;
    return cl.normals();
  }
  const auto gens = space_cone_generators(s, tol);
  if (!gens) return std::nullopt;
  try {
    return dd_normals(*gens, {}, space_dim(s), tol);
  } catch (const UnsupportedError&) {
    return std::nullopt;
  }
}

std::optional<HPolytope> space_ball(const MapSpace& s, const TolerancePolicy& tol) {
  if (const auto* e = std::get_if<SeminormedSpace>(&s)) return polyhedral_ball(e->seminorm, tol);
  if (const auto* a = std::get_if<AouSpace>(&s)) return polyhedral_ball(a->norm, tol);
  const auto normals = space_cone_normals(s, tol);
  if (!normals) return std::nullopt;
  // order interval [-u, u]: |<h, y>| <= <h, u> with u = (0, 1)
  const std::size_t d = space_dim(s);
  HPolytope ball;
  ball.dim = d;
  for (const auto& h : *normals) {
    const double hu = h[d - 1];
    if (hu <= tol.abs_tol) continue;
    ball.add((1.0 / hu) * h, 1.0);
    ball.add((-1.0 / hu) * h, 1.0);
  }
  return ball;
}

Vector sample_space_cone(const MapSpace& s, std::mt19937_64& rng) {
  if (const Cone* k = plain_cone(s)) return sample_cone(*k, rng);
  const auto& u = std::get<UnitizedSpace>(s);
  std::normal_distribution<double> g;
  std::exponential_distribution<double> ex(1.0);
  std::uniform_real_distribution<double> unif;
  Vector x(u.base_dim());
  const double scale = ex(rng) + 0.1;
  for (auto& v : x) v = scale * g(rng);
  const UnitizedElement e = u.element(x, 0.0);
  const double d = u.distance(e.rep);
  const double slack = unif(rng) < 0.3 ? 0.0 : ex(rng) * (1.0 + d);
  return to_coordinates({e.rep, d + slack});
}

std::string describe(const MapSpace& s) {
  return std::visit(
      Overloaded{[](const SeminormedSpace& e) { return "(" + e.cone.describe() + ", " + e.seminorm.describe() + ")"; },
                 [](const UnitizedSpace& u) {
                   return "unitization of (" + u.base().cone.describe() + ", " + u.base().seminorm.describe() + ")";
                 },
                 [](const AouSpace& a) { return "(" + a.cone.describe() + ", unit " + to_string(a.unit) + ")"; }},
      s);
}

PositiveMap::PositiveMap(DenseMatrix m, MapSpace dom, MapSpace cod)
    : matrix(std::move(m)), domain(std::move(dom)), codomain(std::move(cod)) {
  if (matrix.cols() != space_dim(domain) || matrix.rows() != space_dim(codomain))
    throw DimensionError("PositiveMap: matrix is " + std::to_string(matrix.rows()) + "x" +
                         std::to_string(matrix.cols()) + " but the spaces have dimensions " +
                         std::to_string(space_dim(domain)) + " -> " + std::to_string(space_dim(codomain)));
}

namespace {

// Cone elements of the domain at which positivity is most likely to fail: minimizers of
// <f^T h, .> over the domain cone for each codomain normal h.
std::vector<Vector> targeted_candidates(const PositiveMap& f, const TolerancePolicy& tol) {
  std::vector<Vector> out;
  const auto normals = space_cone_normals(f.codomain, tol);
  if (!normals) return out;
  const DenseMatrix ft = f.matrix.transpose();
  if (const auto* u = std::get_if<UnitizedSpace>(&f.domain)) {
    const auto l = euclidean_factor(u->base().seminorm);
    if (!l || l->rows() != l->cols()) return out;
    const std::size_t n = u->base_dim();
    for (const auto& h : *normals) {
      const Vector c = slice(ft.apply(h), 0, n);
      if (norm2(c) == 0.0) continue;
      try {
        const Vector y = solve_square(l->transpose(), c);
        const Vector x = (-1.0 / norm2(y)) * solve_square(*l, y);
        const auto e = u->element(x, 0.0);
        out.push_back(to_coordinates({e.rep, u->distance(e.rep)}));
      } catch (const std::exception&) {
      }
    }
    return out;
  }
  const Cone* k = plain_cone(f.domain);
  if (k && k->closure().kind() == ConeKind::Psd) {
    for (const auto& h : *normals) {
      const auto e = jacobi_eigen(smat(ft.apply(h)));
      const Vector v = e.vectors.column(0);
      DenseMatrix vv(v.size(), v.size());
      for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) vv(i, j) = v[i] * v[j];
      out.push_back(svec(vv));
    }
  }
  return out;
}

bool codomain_closed(const MapSpace& s) {
  const Cone* k = plain_cone(s);
  return !k || k->is_closed();
}

}  // namespace

PropertyReport is_positive(const PositiveMap& f, const SamplingOptions& opt, const TolerancePolicy& tol) {
  PropertyReport r;
  r.property = "positive";
  r.tolerance = tol.abs_tol;
  r.seed = opt.seed;
  auto maps_in = [&](const Vector& x) { return space_contains(f.codomain, f.apply(x), tol); };
  auto fail = [&](const Vector& x, std::size_t used, bool exact, std::string why) {
    r.verdict = Verdict::Fail;
    r.witness = x;
    r.samples = used;
    r.exact = exact;
    r.detail = std::move(why);
    return r;
  };

  if (const auto gens = space_cone_generators(f.domain, tol)) {
    for (std::size_t i = 0; i < gens->size(); ++i)
      if (!maps_in((*gens)[i])) return fail((*gens)[i], i + 1, true, "a cone generator maps outside the codomain cone");
    if (codomain_closed(f.codomain)) {
      r.verdict = Verdict::Pass;
      r.samples = gens->size();
      r.exact = true;
      r.detail = "every cone generator maps into the closed codomain cone";
      return r;
    }
  }
  const auto cands = targeted_candidates(f, tol);
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (!maps_in(cands[i])) return fail(cands[i], i + 1, false, "a targeted cone element maps outside the codomain cone");
  std::mt19937_64 rng(opt.seed);
  for (std::size_t i = 0; i < opt.samples; ++i) {
    const Vector x = sample_space_cone(f.domain, rng);
    if (!maps_in(x)) return fail(x, cands.size() + i + 1, false, "a sampled cone element maps outside the codomain cone");
  }
  r.verdict = Verdict::Pass;
  r.samples = cands.size() + opt.samples;
  r.detail = "no violation among targeted and sampled cone elements";
  return r;
}

SeminormedSpace as_seminormed(const MapSpace& s) {
  if (const auto* e = std::get_if<SeminormedSpace>(&s)) return *e;
  if (const auto* a = std::get_if<AouSpace>(&s)) return SeminormedSpace{a->cone, a->norm};
  throw UnsupportedError("as_seminormed: a unitized space is not accepted here");
}

namespace {

const Seminorm* domain_seminorm(const MapSpace& s) {
  if (const auto* e = std::get_if<SeminormedSpace>(&s)) return &e->seminorm;
  if (const auto* a = std::get_if<AouSpace>(&s)) return &a->norm;
  return nullptr;
}

std::optional<OperatorNorm> scalar_codomain_norm(const PositiveMap& f) {
  if (space_dim(f.codomain) != 1) return std::nullopt;
  const Seminorm* p = domain_seminorm(f.domain);
  if (!p || (p->kind() != SeminormKind::Lq && p->kind() != SeminormKind::WeightedLq)) return std::nullopt;
  const std::size_t n = p->dim();
  const double c = space_norm(f.codomain, Vector{1.0});
  Vector w(n, 1.0);
  if (p->kind() == SeminormKind::WeightedLq) w = p->weights();
  Vector b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = f.matrix(0, i) / w[i];
  OperatorNorm r;
  r.maximizer = Vector(n);
  const double q = p->q();
  if (q == 1.0) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::fabs(b[i]) > std::fabs(b[k])) k = i;
    r.value = c * std::fabs(b[k]);
    r.maximizer[k] = (b[k] < 0 ? -1.0 : 1.0) / w[k];
  } else if (q == 2.0) {
    const double nb = norm2(b);
    r.value = c * nb;
    if (nb > 0)
      for (std::size_t i = 0; i < n; ++i) r.maximizer[i] = b[i] / (nb * w[i]);
  } else {
    r.value = c * norm1(b);
    for (std::size_t i = 0; i < n; ++i) r.maximizer[i] = (b[i] < 0 ? -1.0 : 1.0) / w[i];
  }
  r.method = "scalar codomain: dual norm of the functional";
  return r;
}

std::optional<OperatorNorm> polyhedral_domain_norm(const PositiveMap& f, const TolerancePolicy& tol) {
  const auto ball = space_ball(f.domain, tol);
  if (!ball) return std::nullopt;
  VPolyhedron vp;
  try {
    vp = vertex_enumeration(*ball, tol);
  } catch (const UnsupportedError&) {
    return std::nullopt;
  }
  OperatorNorm r;
  r.method = "polyhedral domain ball: maximum over its vertices";
  r.maximizer = Vector(space_dim(f.domain));
  for (const auto& ray : vp.rays) {
    if (space_norm(f.codomain, f.apply(ray)) > tol.abs_tol * std::max(1.0, matrix_scale(f.matrix))) {
      r.value = std::numeric_limits<double>::infinity();
      r.maximizer = ray;
      r.method += " (unbounded along a recession direction of the ball)";
      return r;
    }
  }
  for (const auto& v : vp.vertices) {
    const double val = space_norm(f.codomain, f.apply(v));
    if (val > r.value) {
      r.value = val;
      r.maximizer = v;
    }
  }
  return r;
}

std::optional<OperatorNorm> euclidean_domain_norm(const PositiveMap& f, const TolerancePolicy& tol) {
  const Seminorm* p = domain_seminorm(f.domain);
  if (!p) return std::nullopt;
  const auto l = euclidean_factor(*p);
  if (!l || l->rows() != l->cols()) return std::nullopt;
  const auto cball = space_ball(f.codomain, tol);
  if (!cball || !cball->is_symmetric(1e-9)) return std::nullopt;
  OperatorNorm r;
  r.method = "euclidean domain: maximum over codomain facets of ||L^-T f^T h|| / c";
  r.maximizer = Vector(space_dim(f.domain));
  const DenseMatrix ft = f.matrix.transpose();
  const DenseMatrix lt = l->transpose();
  try {
    for (std::size_t i = 0; i < cball->size(); ++i) {
      const Vector y = solve_square(lt, ft.apply(cball->normals[i]));
      const double val = norm2(y) / cball->offsets[i];
      if (val > r.value) {
        r.value = val;
        r.maximizer = (1.0 / norm2(y)) * solve_square(*l, y);
      }
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return r;
}

std::optional<OperatorNorm> order_unit_domain_norm(const PositiveMap& f, const TolerancePolicy& tol) {
  const auto u = space_unit(f.domain);
  const auto w = space_unit(f.codomain);
  if (!u || !w) return std::nullopt;
  const auto pos = is_positive(f, {}, tol);
  if (!pos.passed()) return std::nullopt;
  OperatorNorm r;
  r.value = space_norm(f.codomain, f.apply(*u));
  r.maximizer = *u;
  r.method = std::string("positive map between order unit spaces: ||f(u)||") +
             (pos.exact ? "" : " (positivity sampled on " + std::to_string(pos.samples) + " cone elements)");
  return r;
}

}  // namespace

OperatorNorm operator_norm_detail(const PositiveMap& f, const TolerancePolicy& tol) {
  if (auto r = scalar_codomain_norm(f)) return *r;
  if (auto r = polyhedral_domain_norm(f, tol)) return *r;
  if (auto r = euclidean_domain_norm(f, tol)) return *r;
  if (auto r = order_unit_domain_norm(f, tol)) return *r;
  throw UnsupportedError(
      "operator_norm: unsupported combination " + describe(f.domain) + " -> " + describe(f.codomain) +
      ". Supported: polyhedral domain ball; Euclidean domain seminorm with a polyhedral codomain norm; "
      "scalar codomain with an lq domain; positive map between order unit spaces");
}

double operator_norm(const PositiveMap& f, const TolerancePolicy& tol) {
  if (f.cached_norm) return *f.cached_norm;
  return operator_norm_detail(f, tol).value;
}

PositiveMap extend_g_alpha(const PositiveMap& f, double alpha, const TolerancePolicy& tol) {
  if (!std::isfinite(alpha)) throw std::invalid_argument("extend_g_alpha: alpha must be finite");
  const SeminormedSpace e = as_seminormed(f.domain);
  const auto w = space_unit(f.codomain);
  if (!w) throw PreconditionError("extend_g_alpha: the codomain must be an order unit space");
  const UnitizedSpace u = build_unitization(e, tol);
  const double scale = std::max(1.0, matrix_scale(f.matrix));
  for (const auto& b : u.lineality().basis())
    if (norm_inf(f.apply(b)) > tol.abs_tol * scale)
      throw PreconditionError("extend_g_alpha: N is not contained in ker f, so f is not a continuous positive map",
                              b.values());
  const std::size_t n = e.dim(), m = f.matrix.rows();
  DenseMatrix g(m, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) g(i, j) = f.matrix(i, j);
    g(i, n) = alpha * (*w)[i];
  }
  return PositiveMap(std::move(g), u, f.codomain);
}

PositiveMap universal_extension(const PositiveMap& psi, const SamplingOptions& opt, const TolerancePolicy& tol) {
  const auto pos = is_positive(psi, opt, tol);
  if (!pos.passed())
    throw PreconditionError("universal_extension: psi is not positive", pos.witness ? pos.witness->values() : std::vector<double>{});
  const SeminormedSpace e = as_seminormed(psi.domain);
  try {
    const auto op = operator_norm_detail(psi, tol);
    if (op.value > 1.0 + tol.rel_tol)
      throw PreconditionError("universal_extension: psi is not contractive (operator norm " + std::to_string(op.value) + ")",
                              op.maximizer.values());
  } catch (const UnsupportedError&) {
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> g;
    for (std::size_t i = 0; i < opt.samples; ++i) {
      Vector x(e.dim());
      for (auto& v : x) v = g(rng);
      const double px = e.seminorm.eval(x);
      if (space_norm(psi.codomain, psi.apply(x)) > px * (1.0 + tol.rel_tol) + tol.abs_tol)
        throw PreconditionError("universal_extension: psi is not contractive", x.values());
    }
  }
  return extend_g_alpha(psi, 1.0, tol);
}

PositiveMap norm_preserving_extension(const PositiveMap& f, const TolerancePolicy& tol) {
  return extend_g_alpha(f, operator_norm(f, tol), tol);
}

PositiveMap unitize_map(const PositiveMap& f, const TolerancePolicy& tol) {
  const SeminormedSpace e = as_seminormed(f.domain);
  const SeminormedSpace fs = as_seminormed(f.codomain);
  const UnitizedSpace ue = build_unitization(e, tol);
  const UnitizedSpace uf = build_unitization(fs, tol);
  const double nf = operator_norm(f, tol);
  if (!std::isfinite(nf)) throw PreconditionError("unitize_map: f is not continuous");
  const double scale = std::max(1.0, matrix_scale(f.matrix));
  for (const auto& b : ue.lineality().basis())
    if (norm_inf(quotient_representative(f.apply(b), uf.lineality())) > tol.abs_tol * scale)
      throw PreconditionError("unitize_map: f does not map N into M", b.values());
  const std::size_t n = e.dim(), m = fs.dim();
  const DenseMatrix pf = complement_projector(uf.lineality()) * f.matrix;
  DenseMatrix g(m + 1, n + 1);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = pf(i, j);
  g(m, n) = nf;
  return PositiveMap(std::move(g), ue, uf);
}

namespace {

void require_order_unit_base(const UnitizedSpace& u, const char* who) {
  if (u.base().seminorm.kind() != SeminormKind::OrderUnit)
    throw PreconditionError(std::string(who) + ": the base space lacks an order unit (its seminorm is not an order-unit seminorm)");
}

}  // namespace

PositiveMap retract_projection(const UnitizedSpace& u) {
  require_order_unit_base(u, "retract_projection");
  const std::size_t n = u.base_dim();
  const DenseMatrix p = complement_projector(u.lineality());
  DenseMatrix g(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = p(i, j);
  return PositiveMap(std::move(g), u, u);
}

PositiveMap universal_retraction(const UnitizedSpace& u) {
  require_order_unit_base(u, "universal_retraction");
  const std::size_t n = u.base_dim();
  const DenseMatrix p = complement_projector(u.lineality());
  const Vector pu = p.apply(u.base().seminorm.unit());
  DenseMatrix g(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g(i, j) = p(i, j);
    g(i, n) = pu[i];
  }
  return PositiveMap(std::move(g), u, u);
}

}  // namespace ovs
