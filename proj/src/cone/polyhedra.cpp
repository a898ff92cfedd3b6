#include "ovs/polyhedra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ovs/errors.hpp"
#include "ovs/lp.hpp"
#include "ovs/subspace.hpp"

namespace ovs {

namespace {

Vector normalized(Vector v) {
  const double n = norm2(v);
  if (n > 0.0) v *= 1.0 / n;
  return v;
}

bool contains_direction(const std::vector<Vector>& set, const Vector& v, double tol) {
  for (const auto& w : set)
    if (max_abs_diff(w, v) <= tol) return true;
  return false;
}

void require_dim(const Vector& v, std::size_t dim, const char* what) {
  if (v.size() != dim) throw DimensionError(std::string(what) + ": vector dimension mismatch");
}

// Row rank of the given vectors.
std::size_t rank_of(const std::vector<const Vector*>& rows, std::size_t dim, double tol) {
  if (rows.empty()) return 0;
  DenseMatrix m(rows.size(), dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = (*rows[i])[j];
  return matrix_rank(m, tol);
}

}  // namespace

void HPolytope::add(Vector normal, double offset) {
  require_dim(normal, dim, "HPolytope::add");
  normals.push_back(std::move(normal));
  offsets.push_back(offset);
}

void HPolytope::validate() const {
  if (normals.size() != offsets.size()) throw DimensionError("HPolytope: normals and offsets differ in count");
  for (const auto& h : normals) {
    require_dim(h, dim, "HPolytope");
    h.require_finite("HPolytope normal");
  }
  for (double c : offsets)
    if (!std::isfinite(c)) throw std::invalid_argument("HPolytope: non-finite offset");
}

bool HPolytope::contains(const Vector& x, double tol) const {
  require_dim(x, dim, "HPolytope::contains");
  for (std::size_t i = 0; i < normals.size(); ++i)
    if (dot(normals[i], x) > offsets[i] + tol * std::max(1.0, std::fabs(offsets[i]))) return false;
  return true;
}

double HPolytope::max_violation(const Vector& x) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < normals.size(); ++i) worst = std::max(worst, dot(normals[i], x) - offsets[i]);
  return worst;
}

bool HPolytope::is_symmetric(double tol) const {
  // Compare rows scaled to offset 1; requires 0 in the interior.
  std::vector<Vector> scaled;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    if (offsets[i] <= 0.0) return false;
    scaled.push_back((1.0 / offsets[i]) * normals[i]);
  }
  for (const auto& a : scaled) {
    bool found = false;
    for (const auto& b : scaled)
      if (max_abs_diff(a, -b) <= tol * std::max(1.0, norm_inf(a))) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

ConeGenerators dd_generators(const std::vector<Vector>& normals_in, std::size_t dim, const TolerancePolicy& tol,
                             std::size_t max_dim) {
  if (dim == 0) throw DimensionError("dd_generators: zero dimension");
  if (dim > max_dim)
    throw UnsupportedError("double description: dimension " + std::to_string(dim) + " exceeds the guard of " +
                           std::to_string(max_dim));
  const double eps = std::max(tol.abs_tol, 1e-10);

  std::vector<Vector> lin;
  for (std::size_t i = 0; i < dim; ++i) lin.push_back(Vector::unit(dim, i));
  std::vector<Vector> rays;
  std::vector<Vector> processed;

  for (const auto& raw : normals_in) {
    require_dim(raw, dim, "dd_generators");
    raw.require_finite("dd_generators normal");
    if (norm2(raw) <= eps) continue;  // 0 >= 0
    const Vector h = normalized(raw);

    // Lineality not contained in the hyperplane: one line becomes a ray.
    std::size_t pick = lin.size();
    double best = eps;
    for (std::size_t i = 0; i < lin.size(); ++i) {
      const double v = std::fabs(dot(h, lin[i]));
      if (v > best) {
        best = v;
        pick = i;
      }
    }
    if (pick < lin.size()) {
      Vector l0 = lin[pick];
      if (dot(h, l0) < 0.0) l0 = -l0;
      const double s0 = dot(h, l0);
      std::vector<Vector> rest;
      for (std::size_t i = 0; i < lin.size(); ++i)
        if (i != pick) rest.push_back(lin[i] - (dot(h, lin[i]) / s0) * l0);
      lin = rest.empty() ? std::vector<Vector>{} : orthonormalize(rest, dim, tol).basis();
      for (auto& r : rays) r = normalized(r - (dot(h, r) / s0) * l0);
      rays.push_back(normalized(l0));
      processed.push_back(h);
      continue;
    }

    std::vector<std::size_t> pos, zero, neg;
    std::vector<double> val(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(h, rays[i]);
      if (val[i] > eps)
        pos.push_back(i);
      else if (val[i] < -eps)
        neg.push_back(i);
      else
        zero.push_back(i);
    }
    processed.push_back(h);
    if (neg.empty()) continue;

    std::vector<Vector> next;
    for (std::size_t i : pos) next.push_back(rays[i]);
    for (std::size_t i : zero) next.push_back(rays[i]);

    const std::size_t pointed_dim = dim - lin.size();
    for (std::size_t p : pos) {
      for (std::size_t n : neg) {
        std::vector<const Vector*> common;
        for (std::size_t k = 0; k + 1 < processed.size(); ++k) {
          const Vector& g = processed[k];
          if (std::fabs(dot(g, rays[p])) <= eps && std::fabs(dot(g, rays[n])) <= eps) common.push_back(&g);
        }
        const std::size_t need = pointed_dim >= 2 ? pointed_dim - 2 : 0;
        if (rank_of(common, dim, 1e-9) != need) continue;
        Vector r = normalized(val[p] * rays[n] - val[n] * rays[p]);
        if (norm2(r) == 0.0) continue;
        if (!contains_direction(next, r, 1e-9)) next.push_back(std::move(r));
      }
    }
    rays = std::move(next);
  }

  // Canonical form: rays orthogonal to the lineality, unit length, no duplicates.
  Subspace l(dim);
  if (!lin.empty()) l = orthonormalize(lin, dim, tol);
  ConeGenerators out;
  out.lineality = l.basis();
  for (const auto& r : rays) {
    Vector v = normalized(r - l.project(r));
    if (norm2(v) == 0.0) continue;
    if (!contains_direction(out.rays, v, 1e-9)) out.rays.push_back(std::move(v));
  }
  return out;
}

std::vector<Vector> dd_normals(const std::vector<Vector>& rays, const std::vector<Vector>& lineality, std::size_t dim,
                               const TolerancePolicy& tol, std::size_t max_dim) {
  std::vector<Vector> constraints;
  for (const auto& r : rays) {
    require_dim(r, dim, "dd_normals");
    constraints.push_back(r);
  }
  for (const auto& l : lineality) {
    require_dim(l, dim, "dd_normals");
    constraints.push_back(l);
    constraints.push_back(-l);
  }
  const ConeGenerators dual = dd_generators(constraints, dim, tol, max_dim);
  std::vector<Vector> out = dual.rays;
  for (const auto& l : dual.lineality) {
    out.push_back(l);
    out.push_back(-l);
  }
  return out;
}

VPolyhedron vertex_enumeration(const HPolytope& p, const TolerancePolicy& tol) {
  p.validate();
  const std::size_t d = p.dim;
  if (d > kMaxConversionDim)
    throw UnsupportedError("vertex enumeration: dimension " + std::to_string(d) + " exceeds the guard of " +
                           std::to_string(kMaxConversionDim));
  std::vector<Vector> cons;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Vector row(d + 1);
    for (std::size_t j = 0; j < d; ++j) row[j] = -p.normals[i][j];
    row[d] = p.offsets[i];
    cons.push_back(std::move(row));
  }
  cons.push_back(Vector::unit(d + 1, d));
  const ConeGenerators g = dd_generators(cons, d + 1, tol, kMaxConversionDim + 1);

  VPolyhedron out;
  out.dim = d;
  const double eps = std::max(tol.abs_tol, 1e-10);
  for (const auto& r : g.rays) {
    const Vector x = slice(r, 0, d);
    if (r[d] > eps) {
      Vector v = (1.0 / r[d]) * x;
      if (!contains_direction(out.vertices, v, 1e-9 * std::max(1.0, norm_inf(v)))) out.vertices.push_back(v);
    } else {
      Vector dir = normalized(x);
      if (norm2(dir) > 0.0 && !contains_direction(out.rays, dir, 1e-9)) out.rays.push_back(dir);
    }
  }
  for (const auto& l : g.lineality) {
    Vector dir = normalized(slice(l, 0, d));
    if (norm2(dir) == 0.0) continue;
    if (!contains_direction(out.rays, dir, 1e-9)) out.rays.push_back(dir);
    if (!contains_direction(out.rays, -dir, 1e-9)) out.rays.push_back(-dir);
  }
  return out;
}

HPolytope facet_enumeration(const VPolyhedron& p, const TolerancePolicy& tol) {
  const std::size_t d = p.dim;
  if (p.vertices.empty()) throw std::invalid_argument("facet_enumeration: polyhedron has no vertices");
  if (d > kMaxConversionDim)
    throw UnsupportedError("facet enumeration: dimension " + std::to_string(d) + " exceeds the guard of " +
                           std::to_string(kMaxConversionDim));
  std::vector<Vector> gens;
  for (const auto& v : p.vertices) {
    require_dim(v, d, "facet_enumeration");
    gens.push_back(concat(v, Vector{1.0}));
  }
  for (const auto& r : p.rays) {
    require_dim(r, d, "facet_enumeration");
    gens.push_back(concat(r, Vector{0.0}));
  }
  const auto normals = dd_normals(gens, {}, d + 1, tol, kMaxConversionDim + 1);

  HPolytope out;
  out.dim = d;
  const double eps = std::max(tol.abs_tol, 1e-10);
  for (const auto& n : normals) {
    Vector a = -slice(n, 0, d);
    const double na = norm2(a);
    if (na <= eps) continue;  // t >= 0
    const double c = n[d] / na;
    a *= 1.0 / na;
    bool dup = false;
    for (std::size_t i = 0; i < out.size() && !dup; ++i)
      dup = max_abs_diff(out.normals[i], a) <= 1e-9 && std::fabs(out.offsets[i] - c) <= 1e-9 * std::max(1.0, std::fabs(c));
    if (!dup) out.add(std::move(a), c);
  }
  return out;
}

bool is_bounded(const HPolytope& p, const TolerancePolicy& tol) {
  p.validate();
  const std::size_t d = p.dim;
  LPProblem lp;
  lp.constraints = DenseMatrix(p.size(), d);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) lp.constraints(i, j) = p.normals[i][j];
  lp.kinds.assign(p.size(), RowKind::LessEqual);
  lp.rhs = Vector(p.offsets);
  lp.free_variable.assign(d, true);
  lp.sense = LpSense::Maximize;
  for (std::size_t j = 0; j < d; ++j) {
    for (double sign : {1.0, -1.0}) {
      lp.objective = sign * Vector::unit(d, j);
      const auto r = solve_lp(lp, tol);
      if (r.status == LpStatus::Infeasible) return true;
      if (r.status != LpStatus::Optimal) return false;
    }
  }
  return true;
}

FullHull full_hull(const VPolyhedron& p, const ConeGenerators& k, const TolerancePolicy& tol) {
  VPolyhedron plus = p, minus = p;
  for (const auto& r : k.rays) {
    plus.rays.push_back(r);
    minus.rays.push_back(-r);
  }
  for (const auto& l : k.lineality) {
    for (auto* q : {&plus, &minus}) {
      q->rays.push_back(l);
      q->rays.push_back(-l);
    }
  }
  const HPolytope hp = facet_enumeration(plus, tol);
  const HPolytope hm = facet_enumeration(minus, tol);
  HPolytope both = hp;
  for (std::size_t i = 0; i < hm.size(); ++i) both.add(hm.normals[i], hm.offsets[i]);

  FullHull out;
  out.vrep = vertex_enumeration(both, tol);
  out.hrep = facet_enumeration(out.vrep, tol);
  return out;
}

FullHull full_hull(const HPolytope& p, const ConeGenerators& k, const TolerancePolicy& tol) {
  return full_hull(vertex_enumeration(p, tol), k, tol);
}

bool same_point_set(const std::vector<Vector>& a, const std::vector<Vector>& b, double tol) {
  auto covered = [tol](const std::vector<Vector>& x, const std::vector<Vector>& y) {
    for (const auto& v : x) {
      bool hit = false;
      for (const auto& w : y)
        if (v.size() == w.size() && max_abs_diff(v, w) <= tol) {
          hit = true;
          break;
        }
      if (!hit) return false;
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

}  // namespace ovs
