#include "ovs/unitize.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "ovs/errors.hpp"
#include "ovs/nnls.hpp"

namespace ovs {

void SeminormedSpace::validate() const {
  if (cone.dim() != seminorm.dim())
    throw DimensionError("seminormed space: cone has dimension " + std::to_string(cone.dim()) +
                         " but the seminorm has dimension " + std::to_string(seminorm.dim()));
}

Vector to_coordinates(const UnitizedElement& e) { return concat(e.rep, Vector{e.lambda}); }

UnitizedElement from_coordinates(const Vector& v) {
  if (v.empty()) throw DimensionError("from_coordinates: empty vector");
  return {slice(v, 0, v.size() - 1), v[v.size() - 1]};
}

UnitizedSpace::UnitizedSpace(SeminormedSpace base, Subspace n, DistanceMethod method, TolerancePolicy tol)
    : base_(std::move(base)), n_(std::move(n)), method_(method), tol_(tol) {}

UnitizedElement UnitizedSpace::unit() const { return {Vector(base_dim()), 1.0}; }

UnitizedElement UnitizedSpace::element(const Vector& x, double lambda) const {
  if (x.size() != base_dim()) throw DimensionError("UnitizedSpace::element: dimension mismatch");
  return {quotient_representative(x, n_), lambda};
}

double UnitizedSpace::distance(const Vector& x) const {
  return dist_to_cone(x, base_.cone, base_.seminorm, tol_, method_);
}

Subspace seminorm_closure_lineality(const Cone& k, const Seminorm& p, const TolerancePolicy& tol) {
  const std::size_t n = k.dim();
  const Cone& cl = k.closure();
  const Subspace ker = seminorm_kernel(p, tol);
  if (ker.is_zero()) return lineality_space(cl, tol);
  if (!cl.is_polyhedral())
    throw UnsupportedError("unitization: degenerate seminorm over a non-polyhedral cone");
  auto gens = cl.generator_list();
  for (const auto& b : ker.basis()) {
    gens.push_back(b);
    gens.push_back(-b);
  }
  return lineality_space(Cone::vpoly(n, gens), tol);
}

UnitizedSpace build_unitization(const SeminormedSpace& e, const TolerancePolicy& tol) {
  tol.validate();
  e.validate();
  const DistanceMethod m = select_distance_method(e.cone, e.seminorm);
  return UnitizedSpace(e, seminorm_closure_lineality(e.cone, e.seminorm, tol), m, tol);
}

bool unitized_contains(const UnitizedSpace& u, const UnitizedElement& e) {
  if (e.rep.size() != u.base_dim()) throw DimensionError("unitized_contains: dimension mismatch");
  return e.lambda >= u.distance(e.rep) - u.tolerance().abs_tol;
}

UnitizedElement canonical_map(const UnitizedSpace& u, const Vector& x) { return u.element(x, 0.0); }

UnitizedNorm order_unit_norm(const UnitizedSpace& u, const UnitizedElement& e) {
  if (e.rep.size() != u.base_dim()) throw DimensionError("order_unit_norm: dimension mismatch");
  const double dp = u.distance(e.rep);
  const double dm = u.distance(-e.rep);
  UnitizedNorm r;
  r.alpha = e.lambda - dp;
  r.omega = e.lambda + dm;
  r.norm = std::max(dp - e.lambda, dm + e.lambda);
  return r;
}

Seminorm one_max_normalization(const SeminormedSpace& e, const TolerancePolicy& tol) {
  e.validate();
  return Seminorm::one_max_normalized(e.cone, e.seminorm, tol);
}

Vector Archimedeanization::to_quotient(const Vector& x) const { return basis.apply_transpose(x); }
Vector Archimedeanization::representative(const Vector& z) const { return basis.apply(z); }

Archimedeanization archimedeanization(const SeminormedSpace& e, const TolerancePolicy& tol) {
  e.validate();
  if (e.seminorm.kind() != SeminormKind::OrderUnit)
    throw PreconditionError("archimedeanization: the seminorm must be the order-unit seminorm of the space");
  const std::size_t n = e.dim();
  const Cone& cl = e.cone.closure();
  Archimedeanization a{e, e.seminorm.unit(), DenseMatrix(), lineality_space(cl, tol)};
  const auto comp = a.lineality.complement_basis(tol.abs_tol);
  const std::size_t k = comp.size();
  a.basis = DenseMatrix::from_columns(comp, n);
  Cone qcone = cl;
  if (cl.is_polyhedral()) {
    std::vector<Vector> gens;
    for (const auto& g : cl.generator_list()) {
      const Vector z = a.to_quotient(g);
      if (norm_inf(z) > tol.abs_tol) gens.push_back(z);
    }
    qcone = Cone::vpoly(k, gens);
  } else if (!a.lineality.is_zero()) {
    throw UnsupportedError("archimedeanization: non-polyhedral cone with nontrivial lineality");
  } else {
    a.basis = DenseMatrix::identity(n);
  }
  a.unit = a.to_quotient(e.seminorm.unit());
  a.space = SeminormedSpace{qcone, Seminorm::order_unit(qcone, a.unit, tol)};
  return a;
}

UnitizedElement embed_archimedeanization(const Archimedeanization& a, const UnitizedSpace& u, const Vector& z) {
  return u.element(a.representative(z), 0.0);
}

std::vector<CrossSectionPoint> cross_section_grid(const UnitizedSpace& u, std::size_t n, double w) {
  if (u.base_dim() != 2) throw DimensionError("cross_section_grid: the base space must be 2-dimensional");
  if (n < 2 || !(w > 0.0)) throw std::invalid_argument("cross_section_grid: need n >= 2 and w > 0");
  std::vector<CrossSectionPoint> out;
  out.reserve(n * n);
  const double step = 2.0 * w / static_cast<double>(n - 1);
  for (std::size_t r = 0; r < n; ++r) {
    const double y = w - step * static_cast<double>(r);
    for (std::size_t c = 0; c < n; ++c) {
      const double x = -w + step * static_cast<double>(c);
      const double d = u.distance(Vector{x, y});
      out.push_back({x, y, d, d <= 1.0 + u.tolerance().abs_tol});
    }
  }
  return out;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Segment {
  std::vector<Vector> points;
};

// Distance from p to the line through a and b.
double line_distance(const Vector& p, const Vector& a, const Vector& b) {
  const Vector t = b - a;
  const double len = norm2(t);
  if (len == 0.0) return norm2(p - a);
  return std::fabs(t[0] * (p[1] - a[1]) - t[1] * (p[0] - a[0])) / len;
}

// Boundary of {d <= 1} along each of `m` rays from the origin; nullopt where the ray stays inside up to `reach`.
std::vector<std::optional<Vector>> boundary_points(const UnitizedSpace& u, std::size_t m, double reach) {
  std::vector<std::optional<Vector>> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(m);
    const Vector dir{std::cos(th), std::sin(th)};
    if (u.distance(reach * dir) <= 1.0) continue;
    double lo = 0.0, hi = reach;
    for (int it = 0; it < 64 && hi - lo > 1e-15 * reach; ++it) {
      const double mid = 0.5 * (lo + hi);
      (u.distance(mid * dir) <= 1.0 ? lo : hi) = mid;
    }
    out[j] = 0.5 * (lo + hi) * dir;
  }
  return out;
}

// Greedy split of each angular run of boundary points into maximal straight pieces.
std::vector<Segment> segment_boundary(const std::vector<std::optional<Vector>>& pts, double ctol) {
  const std::size_t m = pts.size();
  std::vector<std::vector<Vector>> runs;
  std::size_t start = 0;
  bool cyclic = true;
  for (std::size_t j = 0; j < m; ++j)
    if (!pts[j]) {
      start = (j + 1) % m;
      cyclic = false;
    }
  std::vector<Vector> cur;
  for (std::size_t s = 0; s < m; ++s) {
    const auto& p = pts[(start + s) % m];
    if (p) {
      cur.push_back(*p);
    } else if (!cur.empty()) {
      runs.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) {
    if (cyclic) cur.push_back(cur.front());
    runs.push_back(std::move(cur));
  }
  std::vector<Segment> segs;
  for (const auto& run : runs) {
    if (run.size() < 2) continue;
    Segment seg{{run[0], run[1]}};
    for (std::size_t i = 2; i < run.size(); ++i) {
      const Vector& p = run[i];
      if (line_distance(p, seg.points.front(), seg.points.back()) <= ctol * std::max(1.0, norm2(p))) {
        seg.points.push_back(p);
      } else {
        const Vector last = seg.points.back();
        segs.push_back(std::move(seg));
        seg = Segment{{last, p}};
      }
    }
    segs.push_back(std::move(seg));
  }
  return segs;
}

std::size_t count_facets(const std::vector<Segment>& segs) {
  return static_cast<std::size_t>(
      std::count_if(segs.begin(), segs.end(), [](const Segment& s) { return s.points.size() >= 3; }));
}

// Halfplanes <n, x> <= 1 through the straight pieces, deduplicated.
HPolytope facet_halfplanes(const std::vector<Segment>& segs) {
  HPolytope h;
  h.dim = 2;
  for (const auto& s : segs) {
    if (s.points.size() < 3) continue;
    const Vector& a = s.points.front();
    const Vector& b = s.points.back();
    Vector nrm{b[1] - a[1], a[0] - b[0]};
    double c = dot(nrm, a);
    if (c < 0) {
      nrm = -nrm;
      c = -c;
    }
    if (c <= 0.0) continue;
    nrm = (1.0 / c) * nrm;
    bool dup = false;
    for (const auto& e : h.normals) dup = dup || max_abs_diff(e, nrm) <= 1e-6 * std::max(1.0, norm_inf(nrm));
    if (!dup) h.add(nrm, 1.0);
  }
  return h;
}

bool is_redundant(const Vector& g, const std::vector<Vector>& others) {
  if (others.empty()) return false;
  const auto a = DenseMatrix::from_columns(others, g.size());
  return solve_nnls(a, g).residual_norm <= 1e-9 * std::max(1.0, norm2(g));
}

}  // namespace

CrossSectionDecision decide_cross_section(const UnitizedSpace& u, double window, std::size_t resolution) {
  if (u.base_dim() != 2) throw DimensionError("decide_cross_section: the base space must be 2-dimensional");
  if (!(window > 0.0) || resolution < 8) throw std::invalid_argument("decide_cross_section: need window > 0 and resolution >= 8");
  CrossSectionDecision out;
  const double reach = 4.0 * window;
  const double ctol = 1e-8;

  std::vector<Segment> finest;
  std::vector<std::size_t> facet_counts;
  bool few_bridges = true;
  for (std::size_t r : {resolution, 2 * resolution, 4 * resolution}) {
    auto segs = segment_boundary(boundary_points(u, r, reach), ctol);
    const std::size_t f = count_facets(segs);
    const std::size_t bridges = segs.size() - f;
    out.pieces_by_resolution.push_back(segs.size());
    facet_counts.push_back(f);
    // Each corner of a polygon leaves at most one two-point piece; curved arcs leave many.
    few_bridges = few_bridges && bridges <= f + 1;
    finest = std::move(segs);
  }
  const bool stable = std::all_of(facet_counts.begin(), facet_counts.end(),
                                  [&](std::size_t f) { return f == facet_counts.front(); });
  const HPolytope hrep = facet_halfplanes(finest);
  out.facets = hrep.size();

  // Reconstruction must reproduce {d <= 1} on a grid, away from the boundary band.
  std::size_t mismatches = 0;
  for (const auto& pt : cross_section_grid(u, 81, window)) {
    if (std::fabs(pt.d - 1.0) <= 1e-6) continue;
    const bool in_rec = hrep.size() == 0 || hrep.max_violation(Vector{pt.x, pt.y}) <= 1e-7;
    if (in_rec != (pt.d < 1.0)) ++mismatches;
  }
  out.grid_exact = mismatches == 0;
  out.polyhedral = stable && few_bridges && out.grid_exact;
  out.detail = "facet counts " + std::to_string(facet_counts[0]) + "/" + std::to_string(facet_counts[1]) + "/" +
               std::to_string(facet_counts[2]) + ", grid mismatches " + std::to_string(mismatches);
  if (!out.polyhedral) {
    out.detail += "; boundary is not a finite union of straight pieces";
    return out;
  }

  // Unitized cone generators in quotient coordinates (E/N ⊕ R).
  const auto comp = u.lineality().complement_basis(u.tolerance().abs_tol);
  const std::size_t k = comp.size();
  const auto q = DenseMatrix::from_rows(comp, 2);
  std::vector<Vector> gens;
  auto push = [&](const Vector& v, double lam) {
    Vector g = concat(q.apply(v), Vector{lam});
    if (norm_inf(g) <= 1e-12) return;
    g = (1.0 / norm2(g)) * g;
    for (const auto& e : gens)
      if (max_abs_diff(e, g) <= 1e-9) return;
    gens.push_back(g);
  };
  if (hrep.size() == 0) {
    // The slice is the whole plane: the cone is lambda >= 0 over the quotient.
    for (const auto& b : comp) {
      push(b, 0.0);
      push(-b, 0.0);
    }
    push(Vector(2), 1.0);
  } else {
    const VPolyhedron vp = vertex_enumeration(hrep, u.tolerance());
    for (const auto& v : vp.vertices) push(v, 1.0);
    for (const auto& r : vp.rays) push(r, 0.0);
  }
  std::vector<Vector> extreme;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<Vector> others;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != i) others.push_back(gens[j]);
    if (!is_redundant(gens[i], others)) extreme.push_back(gens[i]);
  }
  // A line in the cone makes every generator redundant; such a cone is not a lattice cone.
  out.extreme_rays = extreme.size();
  out.extreme_ray_list = extreme;
  out.lattice = extreme.size() == k + 1 && matrix_rank(DenseMatrix::from_rows(extreme, k + 1), 1e-9) == k + 1;
  return out;
}

}  // namespace ovs
