#include "ovs/propcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ovs/cstar.hpp"
#include "ovs/errors.hpp"

namespace ovs {

std::uint64_t derive_seed(std::uint64_t seed, const std::string& label) {
  std::uint64_t h = 1469598103934665603ull ^ seed;
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

Vector gaussian(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Vector v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

PropertyReport start(const char* name, const CheckOptions& opt) {
  PropertyReport r;
  r.property = name;
  r.seed = opt.seed;
  r.tolerance = opt.tol.abs_tol;
  return r;
}

PropertyReport& fail(PropertyReport& r, Vector witness, std::string detail) {
  r.verdict = Verdict::Fail;
  r.witness = std::move(witness);
  r.detail = std::move(detail);
  return r;
}

PropertyReport& precondition(PropertyReport& r, std::string detail, std::optional<Vector> witness = {}) {
  r.verdict = Verdict::PreconditionFailed;
  r.detail = std::move(detail);
  r.witness = std::move(witness);
  return r;
}

// Generators usable for chain candidates: the cone's own generators when finitely generated,
// otherwise a handful of samples.
std::vector<Vector> candidate_generators(const Cone& k, std::mt19937_64& rng) {
  if (k.is_polyhedral()) return k.generator_list();
  std::vector<Vector> g;
  for (int i = 0; i < 6; ++i) g.push_back(sample_cone(k, rng));
  return g;
}

// Sign vectors {-1, 0, 1}^n without the zero vector, for n <= 4.
std::vector<Vector> sign_vectors(std::size_t n) {
  std::vector<Vector> out;
  if (n > 4) return out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 1; code < total; ++code) {
    Vector v(n);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= 3) v[i] = static_cast<double>(c % 3) - 1.0;
    out.push_back(v);
  }
  return out;
}

// Elements of the p-closure cl(K + ker p), when an exact membership test exists.
std::optional<std::function<bool(const Vector&)>> p_closure_membership(const SeminormedSpace& e,
                                                                       const TolerancePolicy& tol) {
  const Cone& c = e.cone.closure();
  const Subspace ker = seminorm_kernel(e.seminorm, tol);
  if (c.is_polyhedral()) {
    std::vector<Vector> gens = c.generator_list();
    for (const auto& b : ker.basis()) {
      gens.push_back(b);
      gens.push_back(-b);
    }
    if (gens.empty()) return [](const Vector& x) { return norm_inf(x) == 0.0; };
    const Cone pc = Cone::vpoly(e.dim(), gens);
    return [pc, tol](const Vector& x) { return pc.contains(x, tol); };
  }
  if (ker.is_zero()) return [c, tol](const Vector& x) { return c.contains(x, tol); };
  return std::nullopt;
}

}  // namespace

PropertyReport check_one_max_normal(const Seminorm& p, const Cone& k, const CheckOptions& opt) {
  PropertyReport r = start("one-max-normal", opt);
  if (p.dim() != k.dim()) throw DimensionError("check_one_max_normal: dimension mismatch");
  std::mt19937_64 rng(opt.seed);
  const double tol = opt.tol.abs_tol;
  auto test = [&](const Vector& x, const Vector& y, const Vector& z) {
    ++r.samples;
    const double py = p.eval(y);
    return py <= std::max(p.eval(x), p.eval(z)) + tol * std::max(1.0, py);
  };
  const auto gens = candidate_generators(k, rng);
  const double scales[][2] = {{1, 1}, {1, 2}, {2, 1}};
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (i == j) continue;
      for (const auto& s : scales) {
        const Vector x = -s[0] * gens[j];
        const Vector z = s[1] * gens[i];
        const Vector y = z + x;
        if (!test(x, y, z)) return fail(r, concat(concat(x, y), z), "p(y) > max(p(x), p(z)) on a generator chain");
      }
    }
  for (std::size_t t = 0; t < opt.samples; ++t) {
    const Vector y = gaussian(rng, k.dim());
    const Vector x = y - sample_cone(k, rng);
    const Vector z = y + sample_cone(k, rng);
    if (!test(x, y, z)) return fail(r, concat(concat(x, y), z), "p(y) > max(p(x), p(z)) on a sampled chain");
  }
  r.detail = "no violating chain";
  return r;
}

PropertyReport check_monotone(const Seminorm& p, const Cone& k, const CheckOptions& opt) {
  PropertyReport r = start("monotone", opt);
  if (p.dim() != k.dim()) throw DimensionError("check_monotone: dimension mismatch");
  std::mt19937_64 rng(opt.seed);
  const double tol = opt.tol.abs_tol;
  auto test = [&](const Vector& x, const Vector& y) {
    ++r.samples;
    const double px = p.eval(x);
    return px <= p.eval(y) + tol * std::max(1.0, px);
  };
  const auto gens = candidate_generators(k, rng);
  for (const auto& gi : gens)
    for (const auto& gj : gens)
      for (double t : {0.25, 0.5, 1.0, 1.5, 2.0}) {
        const Vector y = gi + t * gj;
        if (!test(gi, y)) return fail(r, concat(gi, y), "p(x) > p(y) with 0 <= x <= y (generator pair)");
      }
  for (std::size_t s = 0; s < opt.samples; ++s) {
    const Vector x = sample_cone(k, rng);
    const Vector y = x + sample_cone(k, rng);
    if (!test(x, y)) return fail(r, concat(x, y), "p(x) > p(y) with 0 <= x <= y (sampled)");
  }
  r.detail = "no violating pair";
  return r;
}

std::vector<Vector> full_hull_ball_vertices(const Seminorm& p, const Cone& k, const TolerancePolicy& tol) {
  const auto ball = polyhedral_ball(p, tol);
  if (!ball) throw UnsupportedError("full hull: seminorm ball is not polyhedral");
  if (!k.closure().is_polyhedral()) throw UnsupportedError("full hull: cone closure is not polyhedral");
  return full_hull(*ball, k.closure().generators(), tol).vrep.vertices;
}

PropertyReport check_full_hull_ball(const Seminorm& p, const Cone& k, const CheckOptions& opt) {
  PropertyReport r = start("full-hull-ball", opt);
  const auto ball = polyhedral_ball(p, opt.tol);
  if (!ball) return precondition(r, "seminorm ball is not polyhedral");
  if (!k.closure().is_polyhedral()) return precondition(r, "cone closure is not polyhedral");
  const FullHull fh = full_hull(*ball, k.closure().generators(), opt.tol);
  const Seminorm pu = Seminorm::one_max_normalized(k, p, opt.tol);
  const std::size_t n = k.dim();

  double radius = 0.0;
  for (const auto& v : fh.vrep.vertices) radius = std::max(radius, norm_inf(v));
  radius = fh.vrep.rays.empty() && radius > 0.0 ? 1.25 * radius : 2.5 * std::max(1.0, radius);

  std::vector<Vector> points;
  if (n == 2) {
    const std::size_t g = std::max<std::size_t>(21, static_cast<std::size_t>(std::sqrt(double(opt.samples))) | 1u);
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j)
        points.push_back(Vector{-radius + 2.0 * radius * double(j) / double(g - 1),
                                radius - 2.0 * radius * double(i) / double(g - 1)});
  } else {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> box(-radius, radius);
    for (std::size_t s = 0; s < opt.samples; ++s) {
      Vector x(n);
      for (auto& v : x) v = box(rng);
      points.push_back(x);
    }
  }

  const double band = 10.0 * opt.tol.abs_tol;
  std::size_t boundary = 0;
  for (const auto& x : points) {
    ++r.samples;
    const double v = pu.eval(x);
    if (std::abs(v - 1.0) <= band) {
      ++boundary;
      continue;
    }
    const bool in_hull = fh.hrep.contains(x, opt.tol.abs_tol);
    if (in_hull != (v < 1.0))
      return fail(r, x, std::string("full hull says ") + (in_hull ? "inside" : "outside") + " but p_u = " +
                            std::to_string(v));
  }
  r.value = static_cast<double>(fh.vrep.vertices.size());
  r.exact = n == 2;
  r.detail = std::to_string(fh.vrep.vertices.size()) + " full-hull vertices, " + std::to_string(boundary) +
             " boundary points skipped";
  return r;
}

PropertyReport check_equivalence_constants(const Seminorm& p, const Cone& k, const CheckOptions& opt) {
  PropertyReport r = start("equivalence-constants", opt);
  const Seminorm pu = Seminorm::one_max_normalized(k, p, opt.tol);
  std::mt19937_64 rng(opt.seed);
  const std::size_t n = k.dim();
  double best = kInf;
  Vector arg;
  bool above = false;
  Vector above_at;
  auto ratio = [&](const Vector& x) -> std::optional<double> {
    const double px = p.eval(x);
    if (!(px > 1e-12 * std::max(1.0, norm_inf(x)))) return std::nullopt;
    ++r.samples;
    const double q = pu.eval(x) / px;
    if (q > 1.0 + 1e-12 && !above) {
      above = true;
      above_at = x;
    }
    return q;
  };
  auto consider = [&](const Vector& x) {
    const auto q = ratio(x);
    if (q && *q < best) {
      best = *q;
      arg = (1.0 / p.eval(x)) * x;
    }
  };
  for (const auto& v : sign_vectors(n)) consider(v);
  for (std::size_t s = 0; s < opt.samples; ++s) consider(gaussian(rng, n));
  // local pattern search around the best point
  if (!arg.empty()) {
    for (double step = 0.25; step > 1e-6; step *= 0.5) {
      bool moved = true;
      for (int it = 0; moved && it < 50; ++it) {
        moved = false;
        for (std::size_t i = 0; i < n; ++i)
          for (double sgn : {-1.0, 1.0}) {
            Vector y = arg;
            y[i] += sgn * step;
            const auto q = ratio(y);
            if (q && *q < best - 1e-15) {
              best = *q;
              arg = (1.0 / p.eval(y)) * y;
              moved = true;
            }
          }
      }
    }
  }
  if (above) return fail(r, above_at, "p_u > p");
  if (arg.empty()) return precondition(r, "p vanishes on every sample");
  r.value = best;
  r.witness = arg;
  if (!(best > 1e-6)) return fail(r, arg, "p_u / p is not bounded away from 0 (p is not locally full)");
  r.detail = "eps_low = " + std::to_string(best) + ", upper constant 1";
  return r;
}

PropertyReport check_normal_cone_norm(const Seminorm& p, const Cone& k, const CheckOptions& opt) {
  PropertyReport r = start("normal-cone-norm", opt);
  const Seminorm pu = Seminorm::one_max_normalized(k, p, opt.tol);
  const Subspace n = seminorm_closure_lineality(k, p, opt.tol);
  if (!n.is_zero()) {
    const Vector& w = n.basis().front();
    r.value = std::max(pu.eval(w), pu.eval(-w));
    return fail(r, w, "p_u vanishes on the lineality of the p-closure (dimension " + std::to_string(n.dim()) +
                          "), p_u(w) = " + std::to_string(*r.value));
  }
  std::mt19937_64 rng(opt.seed);
  double lowest = kInf;
  for (std::size_t s = 0; s < opt.samples; ++s) {
    Vector x = gaussian(rng, k.dim());
    x *= 1.0 / norm2(x);
    ++r.samples;
    const double v = pu.eval(x);
    if (v <= opt.tol.abs_tol) return fail(r, x, "p_u vanishes on a unit vector");
    lowest = std::min(lowest, v);
  }
  CheckOptions sub = opt;
  sub.samples = std::max<std::size_t>(opt.samples / 4, 1);
  sub.seed = derive_seed(opt.seed, "monotone");
  const PropertyReport mono = check_monotone(pu, k, sub);
  r.samples += mono.samples;
  if (!mono.passed()) return fail(r, *mono.witness, "p_u is not monotone: " + mono.detail);
  r.value = lowest;
  r.detail = "p_u is a monotone norm; min over Euclidean unit samples " + std::to_string(lowest);
  return r;
}

PropertyReport check_universal_property(const PositiveMap& psi, const CheckOptions& opt) {
  PropertyReport r = start("universal-property", opt);
  std::optional<PositiveMap> ext;
  try {
    ext = universal_extension(psi, {opt.samples, opt.seed}, opt.tol);
  } catch (const PreconditionError& e) {
    std::optional<Vector> w;
    if (!e.witness().empty()) w = Vector(e.witness());
    return precondition(r, e.what(), w);
  } catch (const UnsupportedError& e) {
    return precondition(r, e.what());
  }
  const auto& u = std::get<UnitizedSpace>(ext->domain);
  const Vector w = *space_unit(psi.codomain);

  const Vector at_unit = ext->apply(to_coordinates(u.unit()));
  if (max_abs_diff(at_unit, w) != 0.0) return fail(r, to_coordinates(u.unit()), "psi~(u) != w");

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> g(0.0, 1.0);
  const std::size_t n = u.base_dim();
  for (std::size_t s = 0; s < opt.samples; ++s) {
    ++r.samples;
    const Vector x = s % 2 == 0 ? gaussian(rng, n) : sample_cone(u.base().cone, rng);
    const Vector fx = psi.apply(x);
    const Vector gx = ext->apply(to_coordinates(canonical_map(u, x)));
    if (max_abs_diff(fx, gx) > 1e-12 * std::max(1.0, norm_inf(x))) return fail(r, x, "psi~ o phi != psi");
    // a unital map agreeing with psi on phi(E) is forced on (rep, lambda) = sum rep_j phi(e_j) + lambda u
    const UnitizedElement e = u.element(x, g(rng));
    const Vector forced = psi.apply(e.rep) + e.lambda * w;
    if (max_abs_diff(forced, ext->apply(to_coordinates(e))) > 1e-12 * std::max(1.0, norm_inf(to_coordinates(e))))
      return fail(r, to_coordinates(e), "psi~ differs from the reconstruction psi(x) + lambda w");
  }
  const PropertyReport pos = is_positive(*ext, {opt.samples, opt.seed}, opt.tol);
  r.samples += pos.samples;
  if (!pos.passed()) return fail(r, *pos.witness, "psi~ is not positive");
  r.exact = pos.exact;
  r.detail = "factorization, unitality and reconstruction hold; psi~ positive (" +
             std::string(pos.exact ? "exact" : "sampled") + ")";
  return r;
}

PropertyReport check_pu_bounded_by_p(const SeminormedSpace& e, const CheckOptions& opt) {
  PropertyReport r = start("pu-le-p", opt);
  const Seminorm pu = one_max_normalization(e, opt.tol);
  std::mt19937_64 rng(opt.seed);
  for (std::size_t s = 0; s < opt.samples; ++s) {
    ++r.samples;
    Vector x = gaussian(rng, e.dim());
    if (s % 3 == 1) x = sample_cone(e.cone, rng) - 0.1 * x;
    const double px = e.seminorm.eval(x);
    if (pu.eval(x) > px + 1e-12 * std::max(1.0, px)) return fail(r, x, "p_u(x) > p(x)");
  }
  r.detail = "p_u <= p on every sample";
  return r;
}

PropertyReport check_pu_equals_p(const SeminormedSpace& e, const CheckOptions& opt) {
  PropertyReport r = start("pu-eq-p", opt);
  const Seminorm pu = one_max_normalization(e, opt.tol);
  std::mt19937_64 rng(opt.seed);
  double worst = 0.0;
  for (std::size_t s = 0; s < opt.samples; ++s) {
    ++r.samples;
    const Vector x = gaussian(rng, e.dim());
    const double px = e.seminorm.eval(x);
    const double diff = std::abs(pu.eval(x) - px);
    worst = std::max(worst, diff);
    if (diff > 1e-12 * std::max(1.0, px)) return fail(r, x, "p_u(x) != p(x), difference " + std::to_string(diff));
  }
  r.value = worst;
  r.detail = "max |p_u - p| = " + std::to_string(worst);
  return r;
}

PropertyReport check_idempotence(const SeminormedSpace& e, const CheckOptions& opt) {
  PropertyReport r = start("idempotence", opt);
  try {
    const Seminorm pu = one_max_normalization(e, opt.tol);
    const Seminorm puu = Seminorm::one_max_normalized(e.cone, pu, opt.tol);
    select_distance_method(e.cone, pu);
    std::mt19937_64 rng(opt.seed);
    double worst = 0.0;
    for (std::size_t s = 0; s < opt.samples; ++s) {
      ++r.samples;
      const Vector x = gaussian(rng, e.dim());
      const double a = pu.eval(x);
      const double diff = std::abs(puu.eval(x) - a);
      worst = std::max(worst, diff);
      if (diff > 1e-9 * std::max(1.0, a)) return fail(r, x, "(p_u)_u != p_u");
    }
    r.value = worst;
    r.detail = "max |(p_u)_u - p_u| = " + std::to_string(worst);
  } catch (const UnsupportedError& ex) {
    return precondition(r, ex.what());
  }
  return r;
}

PropertyReport check_stability(const SeminormedSpace& e, const CheckOptions& opt) {
  PropertyReport r = start("stability", opt);
  std::optional<UnitizedSpace> up, uu;
  try {
    up = build_unitization(e, opt.tol);
    uu = build_unitization({e.cone, one_max_normalization(e, opt.tol)}, opt.tol);
  } catch (const UnsupportedError& ex) {
    return precondition(r, ex.what());
  }
  if (up->lineality().dim() != uu->lineality().dim())
    return fail(r, Vector{double(up->lineality().dim()), double(uu->lineality().dim())},
                "the two builds have different N");
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::size_t banded = 0;
  for (std::size_t s = 0; s < opt.samples; ++s) {
    ++r.samples;
    const Vector x = gaussian(rng, e.dim(), 1.5);
    const double d = up->distance(x);
    const double off = std::pow(10.0, -6.0 * unif(rng)) * (unif(rng) < 0.5 ? -1.0 : 1.0);
    const double lambda = d + off;
    const bool a = unitized_contains(*up, up->element(x, lambda));
    const bool b = unitized_contains(*uu, uu->element(x, lambda));
    if (a == b) continue;
    if (std::abs(off) <= 1e-7) {
      ++banded;
      continue;
    }
    return fail(r, concat(x, Vector{lambda}), "membership differs between the p and p_u builds");
  }
  r.detail = std::to_string(banded) + " samples within the 1e-7 band";
  return r;
}

PropertyReport check_norm_formula(const UnitizedSpace& u, const CheckOptions& opt) {
  PropertyReport r = start("norm-formula", opt);
  std::mt19937_64 rng(opt.seed);
  const Seminorm& p = u.base().seminorm;
  double worst = 0.0;
  for (std::size_t s = 0; s < opt.samples; ++s) {
    ++r.samples;
    const Vector x = gaussian(rng, u.base_dim(), 1.5);
    const double lambda = gaussian(rng, 1, 1.5)[0];
    const UnitizedElement e = u.element(x, lambda);
    const double reported = order_unit_norm(u, e).norm;
    // inf { t : t u - e and t u + e in the unitized cone }
    auto feasible = [&](double t) {
      return unitized_contains(u, u.element(-e.rep, t - e.lambda)) && unitized_contains(u, u.element(e.rep, t + e.lambda));
    };
    double lo = 0.0, hi = p.eval(e.rep) + std::abs(e.lambda) + 1.0;
    while (!feasible(hi)) hi *= 2.0;
    while (hi - lo > 1e-9 * std::max(1.0, hi)) {
      const double mid = 0.5 * (lo + hi);
      (feasible(mid) ? hi : lo) = mid;
    }
    const double diff = std::abs(hi - reported);
    worst = std::max(worst, diff);
    if (diff > 1e-7 * std::max(1.0, reported))
      return fail(r, to_coordinates(e), "order_unit_norm " + std::to_string(reported) + " vs infimum " + std::to_string(hi));
  }
  r.value = worst;
  r.detail = "max deviation from the defining infimum " + std::to_string(worst);
  return r;
}

PropertyReport check_canonical_map(const UnitizedSpace& u, const CheckOptions& opt) {
  PropertyReport r = start("canonical-map", opt);
  const SeminormedSpace& e = u.base();
  const auto member = p_closure_membership(e, opt.tol);
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::size_t banded = 0, disagreements_checked = 0;
  for (std::size_t s = 0; s < opt.samples; ++s) {
    ++r.samples;
    Vector x = gaussian(rng, e.dim());
    if (s % 2 == 0) x = sample_cone(e.cone, rng) + std::pow(10.0, -4.0 * unif(rng)) * x;
    const UnitizedElement phi = canonical_map(u, x);
    const double px = e.seminorm.eval(x);
    if (order_unit_norm(u, phi).norm > px + 1e-9) return fail(r, x, "||phi(x)||_u > p(x)");
    if (s % 4 == 2) {
      const Vector y = sample_cone(e.cone, rng);
      if (!unitized_contains(u, canonical_map(u, y))) return fail(r, y, "phi(y) not positive for y in the cone");
    }
    if (!member) continue;
    ++disagreements_checked;
    const bool in_u = unitized_contains(u, phi);
    if (in_u == (*member)(x)) continue;
    if (u.distance(x) <= 1e-9 * std::max(1.0, norm_inf(x))) {
      ++banded;
      continue;
    }
    return fail(r, x, std::string("phi(x) ") + (in_u ? "in" : "not in") + " the unitized cone but x " +
                          (in_u ? "outside" : "inside") + " the p-closure");
  }
  r.detail = member ? std::to_string(disagreements_checked) + " membership comparisons, " + std::to_string(banded) +
                          " in the boundary band"
                    : "contractivity and positivity only (no exact p-closure membership test)";
  return r;
}

PropertyReport check_archimedeanization(const SeminormedSpace& e, const CheckOptions& opt) {
  PropertyReport r = start("archimedeanization", opt);
  std::optional<Archimedeanization> a;
  std::optional<UnitizedSpace> u;
  try {
    a = archimedeanization(e, opt.tol);
    u = build_unitization(e, opt.tol);
  } catch (const PreconditionError& ex) {
    return precondition(r, ex.what());
  } catch (const UnsupportedError& ex) {
    return precondition(r, ex.what());
  }
  const PositiveMap retract = universal_retraction(*u);
  const PositiveMap literal = retract_projection(*u);
  std::mt19937_64 rng(opt.seed);
  const std::size_t k = a->space.dim();
  double worst = 0.0;
  for (std::size_t s = 0; s < opt.samples; ++s) {
    ++r.samples;
    const Vector z = s % 3 == 0 && k > 0 ? sample_cone(a->space.cone, rng) : gaussian(rng, k);
    const UnitizedElement emb = embed_archimedeanization(*a, *u, z);
    const double na = a->space.seminorm.eval(z);
    const double nu = order_unit_norm(*u, emb).norm;
    worst = std::max(worst, std::abs(na - nu));
    if (std::abs(na - nu) > 1e-9 * std::max(1.0, na)) return fail(r, z, "embedding is not isometric");
    const Vector c = to_coordinates(emb);
    const double scale = 1e-12 * std::max(1.0, norm_inf(c));
    if (max_abs_diff(retract.apply(c), c) > scale) return fail(r, z, "universal retraction moves the embedded element");
    if (max_abs_diff(literal.apply(c), c) > scale) return fail(r, z, "retract projection moves the embedded element");
    if (s % 3 == 0 && !unitized_contains(*u, emb)) return fail(r, z, "embedding is not positive");
  }
  r.value = worst;
  r.detail = "quotient dimension " + std::to_string(k) + ", max norm deviation " + std::to_string(worst);
  return r;
}

PropertyReport check_threshold_sharpness(const PositiveMap& f, const CheckOptions& opt) {
  PropertyReport r = start("threshold-sharpness", opt);
  const double nf = operator_norm(f, opt.tol);
  r.value = nf;
  const PositiveMap below = extend_g_alpha(f, 0.999 * nf, opt.tol);
  const PropertyReport rb = is_positive(below, {opt.samples, opt.seed}, opt.tol);
  r.samples += rb.samples;
  if (rb.verdict != Verdict::Fail || !rb.witness) return fail(r, Vector{0.999 * nf}, "g_alpha positive below ||f||");
  if (!space_contains(below.domain, *rb.witness, opt.tol) ||
      space_contains(below.codomain, below.apply(*rb.witness), opt.tol))
    return fail(r, *rb.witness, "witness below ||f|| does not replay");
  const PositiveMap above = extend_g_alpha(f, 1.001 * nf, opt.tol);
  const PropertyReport ra = is_positive(above, {opt.samples, opt.seed}, opt.tol);
  r.samples += ra.samples;
  if (!ra.passed()) return fail(r, *ra.witness, "g_alpha not positive above ||f||");
  r.exact = rb.exact && ra.exact;
  r.witness = rb.witness;
  r.detail = "||f|| = " + std::to_string(nf) + "; below: witness found; above: positive (" +
             (ra.exact ? "exact" : "sampled") + ")";
  return r;
}

std::vector<PositiveMap> golden_map_instances(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 2.0);
  std::vector<PositiveMap> out;
  for (std::size_t t = 0; t < count; ++t) {
    const double q = t % 3 == 0 ? 1.0 : t % 3 == 1 ? 2.0 : kInf;
    const std::size_t n = 1 + (t / 3) % 3;
    const std::size_t m = 1 + (t / 9) % 3;
    DenseMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = unif(rng) < 0.4 ? 0.0 : unif(rng);
    for (std::size_t i = 0; i < m; ++i) a(i, i % n) += 0.25;
    Vector w(m);
    for (auto& v : w) v = 0.5 + unif(rng);
    out.emplace_back(a, SeminormedSpace{Cone::orthant(n), Seminorm::lq(n, q)}, aou_space(Cone::orthant(m), w));
  }
  return out;
}

namespace {

Cone declared_halfplane() {
  ConePredicate pred;
  pred.description = "open upper halfplane with the nonnegative x1 axis";
  pred.pieces.push_back({{Vector{0, 1}}, {}, {}});
  pred.pieces.push_back({{}, {Vector{1, 0}}, {Vector{0, 1}}});
  return Cone::declared_closure(pred, Cone::hpoly(2, {Vector{0, 1}}));
}

Seminorm nonfull_gauge() {
  HPolytope b;
  b.dim = 2;
  for (const Vector& h : {Vector{2, -1}, Vector{-2, 1}, Vector{0, 1}, Vector{0, -1}}) b.add(h, 1.0);
  return Seminorm::polytope_gauge(b);
}

const GoldenInstance& find(const std::vector<GoldenInstance>& g, const std::string& name) {
  for (const auto& i : g)
    if (i.name == name) return i;
  throw std::logic_error("unknown golden instance " + name);
}

}  // namespace

std::vector<GoldenInstance> golden_instances() {
  const Cone o2 = Cone::orthant(2);
  const Cone o3 = Cone::orthant(3);
  const Cone half = declared_halfplane();
  const Cone psd2 = Cone::psd(2);
  return {
      {"l1-orthant2", {o2, Seminorm::lq(2, 1.0)}, true},
      {"linf-orthant2", {o2, Seminorm::lq(2, kInf)}, true},
      {"l2-orthant2", {o2, Seminorm::lq(2, 2.0)}, false},
      {"l2-zero2", {Cone::zero(2), Seminorm::lq(2, 2.0)}, false},
      {"l2-halfplane", {Cone::hpoly(2, {Vector{0, 1}}), Seminorm::lq(2, 2.0)}, false},
      {"nonfull-gauge-orthant2", {o2, nonfull_gauge()}, true},
      {"order-unit-orthant3", {o3, Seminorm::order_unit(o3, Vector{1, 2, 1})}, true},
      {"pullback-kernel-e3",
       {o3, Seminorm::pullback(DenseMatrix::from_rows({Vector{1, 0, 0}, Vector{0, 1, 0}}, 3), Seminorm::lq(2, kInf))},
       true},
      {"declared-halfplane-order-unit", {half, Seminorm::order_unit(half, Vector{0, 1})}, false},
      {"psd2-opnorm", {psd2, Seminorm::order_unit(psd2, Vector{1, 0, 1})}, false},
      {"vpoly3-l1",
       {Cone::vpoly(3, {Vector{1, 0, 0}, Vector{0, 1, 0}, Vector{0, 0, 1}, Vector{1, 1, -1}}), Seminorm::lq(3, 1.0)}, true},
  };
}

bool SuiteRow::ok() const {
  const bool verdict_ok = expected == Verdict::Pass ? report.passed() : report.verdict == expected;
  if (!verdict_ok) return false;
  if (expected_value) return report.value && std::abs(*report.value - *expected_value) <= value_tol;
  return true;
}

bool SuiteResult::all_ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const SuiteRow& r) { return r.ok(); });
}

namespace {

class SuiteBuilder {
 public:
  SuiteBuilder(SuiteResult& out, std::uint64_t seed, std::size_t samples) : out_(out), seed_(seed), samples_(samples) {}

  CheckOptions options(const std::string& instance, const std::string& property, std::size_t samples = 0) const {
    CheckOptions o;
    o.samples = samples ? samples : samples_;
    o.seed = derive_seed(seed_, instance + "/" + property);
    return o;
  }

  template <class F>
  void add(const std::string& instance, const std::string& property, F&& check, Verdict expected = Verdict::Pass,
           std::optional<double> value = {}, double value_tol = 0.0, std::size_t samples = 0) {
    SuiteRow row;
    row.instance = instance;
    row.report = check(options(instance, property, samples));
    row.report.property = property;
    row.expected = expected;
    row.expected_value = value;
    row.value_tol = value_tol;
    out_.rows.push_back(std::move(row));
  }

 private:
  SuiteResult& out_;
  std::uint64_t seed_;
  std::size_t samples_;
};

void add_space_rows(SuiteBuilder& b, const std::string& name, const SeminormedSpace& e, bool polyhedral_pu) {
  const UnitizedSpace u = build_unitization(e);
  const Seminorm pu = one_max_normalization(e);
  b.add(name, "pu-le-p", [&](const CheckOptions& o) { return check_pu_bounded_by_p(e, o); });
  b.add(name, "norm-formula", [&](const CheckOptions& o) { return check_norm_formula(u, o); }, Verdict::Pass, {}, 0.0, 100);
  b.add(name, "canonical-map", [&](const CheckOptions& o) { return check_canonical_map(u, o); });
  b.add(name, "monotone[p_u]", [&](const CheckOptions& o) { return check_monotone(pu, e.cone, o); }, Verdict::Pass, {},
        0.0, 100);
  b.add(name, "one-max-normal[p_u]", [&](const CheckOptions& o) { return check_one_max_normal(pu, e.cone, o); },
        Verdict::Pass, {}, 0.0, 100);
  if (polyhedral_pu) {
    b.add(name, "idempotence", [&](const CheckOptions& o) { return check_idempotence(e, o); }, Verdict::Pass, {}, 0.0,
          100);
    b.add(name, "stability", [&](const CheckOptions& o) { return check_stability(e, o); });
  }
}

void golden_suite(SuiteBuilder& b) {
  const auto g = golden_instances();
  const auto& l1 = find(g, "l1-orthant2").space;
  const auto& linf = find(g, "linf-orthant2").space;
  const auto& l2 = find(g, "l2-orthant2").space;
  const auto& l2z = find(g, "l2-zero2").space;
  const auto& half = find(g, "l2-halfplane").space;
  const auto& gauge = find(g, "nonfull-gauge-orthant2").space;
  const auto& ou3 = find(g, "order-unit-orthant3").space;
  const auto& pull = find(g, "pullback-kernel-e3").space;
  const auto& dh = find(g, "declared-halfplane-order-unit").space;
  const auto& psd = find(g, "psd2-opnorm").space;
  const auto& vp = find(g, "vpoly3-l1").space;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  add_space_rows(b, "l1-orthant2", l1, find(g, "l1-orthant2").polyhedral_pu);
  b.add("l1-orthant2", "one-max-normal", [&](const CheckOptions& o) { return check_one_max_normal(l1.seminorm, l1.cone, o); },
        Verdict::Fail);
  b.add("l1-orthant2", "full-hull-ball", [&](const CheckOptions& o) { return check_full_hull_ball(l1.seminorm, l1.cone, o); },
        Verdict::Pass, 6.0, 0.0);
  b.add("l1-orthant2", "equivalence-constants",
        [&](const CheckOptions& o) { return check_equivalence_constants(l1.seminorm, l1.cone, o); }, Verdict::Pass, 0.5,
        1e-6, 200);
  const AouSpace reals = aou_space(Cone::orthant(1), Vector{1});
  b.add("l1-orthant2", "universal-property",
        [&](const CheckOptions& o) {
          return check_universal_property(PositiveMap(DenseMatrix::from_rows({Vector{1, 1}}, 2), l1, reals), o);
        },
        Verdict::Pass, {}, 0.0, 200);
  b.add("l1-orthant2", "universal-property[non-contractive]",
        [&](const CheckOptions& o) {
          return check_universal_property(PositiveMap(DenseMatrix::from_rows({Vector{2, 0}}, 2), l1, reals), o);
        },
        Verdict::PreconditionFailed, {}, 0.0, 200);

  add_space_rows(b, "linf-orthant2", linf, find(g, "linf-orthant2").polyhedral_pu);
  b.add("linf-orthant2", "one-max-normal",
        [&](const CheckOptions& o) { return check_one_max_normal(linf.seminorm, linf.cone, o); });
  b.add("linf-orthant2", "pu-eq-p", [&](const CheckOptions& o) { return check_pu_equals_p(linf, o); });
  b.add("linf-orthant2", "full-hull-ball",
        [&](const CheckOptions& o) { return check_full_hull_ball(linf.seminorm, linf.cone, o); }, Verdict::Pass, 4.0, 0.0);
  b.add("linf-orthant2", "equivalence-constants",
        [&](const CheckOptions& o) { return check_equivalence_constants(linf.seminorm, linf.cone, o); }, Verdict::Pass,
        1.0, 1e-9, 200);

  add_space_rows(b, "l2-orthant2", l2, find(g, "l2-orthant2").polyhedral_pu);
  b.add("l2-orthant2", "one-max-normal", [&](const CheckOptions& o) { return check_one_max_normal(l2.seminorm, l2.cone, o); },
        Verdict::Fail);
  b.add("l2-orthant2", "monotone", [&](const CheckOptions& o) { return check_monotone(l2.seminorm, l2.cone, o); });
  b.add("l2-orthant2", "normal-cone-norm",
        [&](const CheckOptions& o) { return check_normal_cone_norm(l2.seminorm, l2.cone, o); }, Verdict::Pass, {}, 0.0, 200);
  b.add("l2-orthant2", "equivalence-constants",
        [&](const CheckOptions& o) { return check_equivalence_constants(l2.seminorm, l2.cone, o); }, Verdict::Pass,
        inv_sqrt2, 1e-6, 200);
  b.add("l2-orthant2", "universal-property",
        [&](const CheckOptions& o) {
          return check_universal_property(
              PositiveMap(DenseMatrix::from_rows({Vector{0.6, 0.8}}, 2), l2, reals), o);
        },
        Verdict::Pass, {}, 0.0, 200);

  add_space_rows(b, "l2-zero2", l2z, find(g, "l2-zero2").polyhedral_pu);
  b.add("l2-zero2", "one-max-normal", [&](const CheckOptions& o) { return check_one_max_normal(l2z.seminorm, l2z.cone, o); });
  b.add("l2-zero2", "pu-eq-p", [&](const CheckOptions& o) { return check_pu_equals_p(l2z, o); });
  b.add("l2-zero2", "normal-cone-norm",
        [&](const CheckOptions& o) { return check_normal_cone_norm(l2z.seminorm, l2z.cone, o); }, Verdict::Pass, {}, 0.0, 200);
  b.add("l2-zero2", "equivalence-constants",
        [&](const CheckOptions& o) { return check_equivalence_constants(l2z.seminorm, l2z.cone, o); }, Verdict::Pass, 1.0,
        1e-12, 200);

  add_space_rows(b, "l2-halfplane", half, find(g, "l2-halfplane").polyhedral_pu);
  b.add("l2-halfplane", "normal-cone-norm",
        [&](const CheckOptions& o) { return check_normal_cone_norm(half.seminorm, half.cone, o); }, Verdict::Fail);
  b.add("l2-halfplane", "equivalence-constants",
        [&](const CheckOptions& o) { return check_equivalence_constants(half.seminorm, half.cone, o); }, Verdict::Fail,
        0.0, 1e-9, 200);

  add_space_rows(b, "nonfull-gauge-orthant2", gauge, find(g, "nonfull-gauge-orthant2").polyhedral_pu);
  b.add("nonfull-gauge-orthant2", "monotone",
        [&](const CheckOptions& o) { return check_monotone(gauge.seminorm, gauge.cone, o); }, Verdict::Fail);
  b.add("nonfull-gauge-orthant2", "full-hull-ball",
        [&](const CheckOptions& o) { return check_full_hull_ball(gauge.seminorm, gauge.cone, o); });

  add_space_rows(b, "order-unit-orthant3", ou3, find(g, "order-unit-orthant3").polyhedral_pu);
  b.add("order-unit-orthant3", "one-max-normal",
        [&](const CheckOptions& o) { return check_one_max_normal(ou3.seminorm, ou3.cone, o); });
  b.add("order-unit-orthant3", "pu-eq-p", [&](const CheckOptions& o) { return check_pu_equals_p(ou3, o); });
  b.add("order-unit-orthant3", "full-hull-ball",
        [&](const CheckOptions& o) { return check_full_hull_ball(ou3.seminorm, ou3.cone, o); }, Verdict::Pass, {}, 0.0, 300);
  b.add("order-unit-orthant3", "archimedeanization", [&](const CheckOptions& o) { return check_archimedeanization(ou3, o); });

  add_space_rows(b, "pullback-kernel-e3", pull, find(g, "pullback-kernel-e3").polyhedral_pu);
  b.add("pullback-kernel-e3", "normal-cone-norm",
        [&](const CheckOptions& o) { return check_normal_cone_norm(pull.seminorm, pull.cone, o); }, Verdict::Fail);

  add_space_rows(b, "declared-halfplane-order-unit", dh, find(g, "declared-halfplane-order-unit").polyhedral_pu);
  b.add("declared-halfplane-order-unit", "pu-eq-p", [&](const CheckOptions& o) { return check_pu_equals_p(dh, o); });
  b.add("declared-halfplane-order-unit", "archimedeanization",
        [&](const CheckOptions& o) { return check_archimedeanization(dh, o); });

  add_space_rows(b, "psd2-opnorm", psd, find(g, "psd2-opnorm").polyhedral_pu);
  b.add("psd2-opnorm", "pu-eq-p", [&](const CheckOptions& o) { return check_pu_equals_p(psd, o); });
  b.add("psd2-opnorm", "archimedeanization", [&](const CheckOptions& o) { return check_archimedeanization(psd, o); });
  b.add("psd2-opnorm", "cstar-unitization-agreement",
        [&](const CheckOptions& o) { return check_cstar_unitization_agreement(2, o.samples, o.seed, o.tol); });

  add_space_rows(b, "vpoly3-l1", vp, find(g, "vpoly3-l1").polyhedral_pu);

  const auto maps = golden_map_instances(6, derive_seed(0, "golden-maps"));
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const std::string name = "map-" + std::to_string(i);
    b.add(name, "threshold-sharpness", [&](const CheckOptions& o) { return check_threshold_sharpness(maps[i], o); },
          Verdict::Pass, {}, 0.0, 2000);
  }
}

void random_suite(SuiteBuilder& b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 2);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < 6; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(pick(rng) % 2);
    const int qi = pick(rng);
    const double q = qi == 0 ? 1.0 : qi == 1 ? 2.0 : kInf;
    Cone k = Cone::orthant(n);
    if (pick(rng) != 0) {
      // a pointed cone: generators tilted towards (1, ..., 1)
      std::vector<Vector> gens;
      const std::size_t m = n + static_cast<std::size_t>(pick(rng) % 2);
      for (std::size_t j = 0; j < m; ++j) {
        Vector v(n);
        for (auto& x : v) x = 1.0 + 0.6 * g(rng);
        gens.push_back(v);
      }
      k = Cone::vpoly(n, gens);
    }
    const SeminormedSpace e{k, Seminorm::lq(n, q)};
    const std::string name = "random-" + std::to_string(i) + "-" + to_string(k.kind()) + std::to_string(n) + "-q" +
                             (qi == 0 ? "1" : qi == 1 ? "2" : "inf");
    add_space_rows(b, name, e, q != 2.0);
  }
}

void broken_suite(SuiteBuilder& b) {
  const auto g = golden_instances();
  const auto& l1 = find(g, "l1-orthant2").space;
  // l1 over the orthant flagged as 1-max-normal: the known chain (0,-1) <= (1,-1) <= (1,0) breaks it
  b.add("l1-orthant2[flagged-one-max-normal]", "one-max-normal",
        [&](const CheckOptions& o) { return check_one_max_normal(l1.seminorm, l1.cone, o); });
  b.add("l1-orthant2", "pu-le-p", [&](const CheckOptions& o) { return check_pu_bounded_by_p(l1, o); });
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace

SuiteResult run_suite(const std::string& suite, std::uint64_t seed) {
  SuiteResult out;
  out.suite = suite;
  out.seed = seed;
  SuiteBuilder b(out, seed, 400);
  if (suite == "golden")
    golden_suite(b);
  else if (suite == "random")
    random_suite(b, seed);
  else if (suite == "broken")
    broken_suite(b);
  else
    throw std::invalid_argument("unknown suite '" + suite + "' (expected golden, random or broken)");
  std::stable_sort(out.rows.begin(), out.rows.end(), [](const SuiteRow& a, const SuiteRow& b2) {
    return a.instance != b2.instance ? a.instance < b2.instance : a.report.property < b2.report.property;
  });
  return out;
}

std::string format_suite_tsv(const SuiteResult& r) {
  std::ostringstream os;
  os << "# suite " << r.suite << " seed " << r.seed << "\n";
  os << "instance\tproperty\tverdict\texpected\tok\tsamples\ttolerance\tvalue\twitness\tseed\n";
  for (const auto& row : r.rows) {
    const auto& p = row.report;
    os << row.instance << '\t' << p.property << '\t' << to_string(p.verdict) << '\t' << to_string(row.expected) << '\t'
       << (row.ok() ? "yes" : "NO") << '\t' << p.samples << '\t' << fmt(p.tolerance) << '\t'
       << (p.value ? fmt(*p.value) : "-") << '\t';
    if (p.witness) {
      for (std::size_t i = 0; i < p.witness->size(); ++i) os << (i ? "," : "") << fmt((*p.witness)[i]);
    } else {
      os << '-';
    }
    os << '\t' << p.seed << '\n';
  }
  std::size_t bad = 0;
  for (const auto& row : r.rows) bad += row.ok() ? 0 : 1;
  os << "# " << r.rows.size() << " rows, " << bad << " unexpected\n";
  return os.str();
}

}  // namespace ovs
