// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oracles.hpp"
#include "ovs/cstar.hpp"
#include "ovs/distance.hpp"
#include "ovs/eigen.hpp"
#include "ovs/posmaps.hpp"
#include "ovs/propcheck.hpp"
#include "ovs/unitize.hpp"

using namespace ovs;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string failure(const std::string& where, const PropertyReport& r) {
  std::string s = where + ": " + r.property + " " + to_string(r.verdict);
  if (!r.detail.empty()) s += " (" + r.detail + ")";
  return s;
}

CheckOptions options(std::uint64_t seed, const std::string& label, std::size_t samples) {
  CheckOptions o;
  o.samples = samples;
  o.seed = derive_seed(seed, label);
  return o;
}

double neg_part_norm(double x, double y, double q) {
  const double a = std::max(-x, 0.0);
  const double b = std::max(-y, 0.0);
  if (q == 1.0) return a + b;
  if (q == 2.0) return std::hypot(a, b);
  return std::max(a, b);
}

Outcome ac1(std::uint64_t) {
  Outcome o;
  std::size_t compared = 0, banded = 0;
  for (double q : {1.0, 2.0, kInf}) {
    const std::string qs = q == kInf ? "inf" : fmt(q);
    const UnitizedSpace u = build_unitization({Cone::orthant(2), Seminorm::lq(2, q)});
    for (const auto& pt : cross_section_grid(u, 201, 2.0)) {
      const double closed = neg_part_norm(pt.x, pt.y, q);
      if (std::abs(closed - 1.0) <= 1e-6) {
        ++banded;
        continue;
      }
      ++compared;
      o.require(pt.inside == (closed <= 1.0),
                "q=" + qs + ": membership differs at (" + fmt(pt.x) + ", " + fmt(pt.y) + ")");
    }
    const CrossSectionDecision dec = decide_cross_section(u, 2.0);
    o.require(dec.polyhedral == (q != 2.0), "q=" + qs + ": polyhedrality decision " + std::to_string(dec.polyhedral));
    o.require(dec.lattice == (q == kInf), "q=" + qs + ": lattice decision " + std::to_string(dec.lattice));
  }
  if (o.pass)
    o.detail = std::to_string(compared) + " grid points agree, " + std::to_string(banded) + " in the band; decisions match";
  return o;
}

Outcome ac2(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(derive_seed(seed, "distance-oracle"));
  std::size_t instances = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial) % 4;
    const bool orthant = trial % 5 == 0;
    std::vector<Vector> gens;
    if (orthant) {
      gens = Cone::orthant(d).generator_list();
    } else {
      for (std::size_t i = 0; i < d + static_cast<std::size_t>(trial) % 3; ++i) gens.push_back(oracle::gaussian(rng, d));
    }
    const Cone k = orthant ? Cone::orthant(d) : Cone::vpoly(d, gens);
    for (double q : {1.0, 2.0, kInf}) {
      const Seminorm p = Seminorm::lq(d, q);
      const Vector x = oracle::gaussian(rng, d, 2.0);
      const DistanceResult fast = distance(x, k, p);
      const double brute = oracle::brute_distance(x, gens, q);
      const double err = std::abs(fast.value - brute);
      worst = std::max(worst, err);
      o.require(err <= 1e-7, "dim " + std::to_string(d) + " q=" + fmt(q) + " " + to_string(fast.method) + ": " +
                                 fmt(fast.value) + " vs " + fmt(brute));
      ++instances;
    }
  }
  o.require(instances >= 200, "too few instances");
  if (o.pass) o.detail = std::to_string(instances) + " instances, max deviation " + fmt(worst);
  return o;
}

template <class F>
Outcome over_golden(std::uint64_t seed, const std::string& label, std::size_t samples, F&& check) {
  Outcome o;
  std::size_t n = 0, total = 0;
  for (const auto& g : golden_instances()) {
    const UnitizedSpace u = build_unitization(g.space);
    const PropertyReport r = check(u, options(seed, g.name + "/" + label, samples));
    o.require(r.passed(), failure(g.name, r));
    total += r.samples;
    ++n;
  }
  if (o.pass) o.detail = std::to_string(n) + " golden instances, " + std::to_string(total) + " samples";
  return o;
}

Outcome ac3(std::uint64_t seed) {
  return over_golden(seed, "norm-formula", 1000,
                     [](const UnitizedSpace& u, const CheckOptions& c) { return check_norm_formula(u, c); });
}

Outcome ac4(std::uint64_t seed) {
  return over_golden(seed, "canonical-map", 10'000,
                     [](const UnitizedSpace& u, const CheckOptions& c) { return check_canonical_map(u, c); });
}

Outcome ac5(std::uint64_t seed) {
  Outcome o;
  const auto maps = golden_map_instances(54, derive_seed(seed, "golden-maps"));
  std::size_t exact = 0;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const PropertyReport r = check_threshold_sharpness(maps[i], options(seed, "map-" + std::to_string(i), 10'000));
    o.require(r.passed() && r.witness.has_value(), failure("map-" + std::to_string(i), r));
    exact += r.exact ? 1 : 0;
  }
  if (o.pass)
    o.detail = std::to_string(maps.size()) + " maps, witness below and positive above (" + std::to_string(exact) +
               " decided exactly)";
  return o;
}

// Contractive positive maps into order unit spaces: the golden maps scaled to norm one and below.
std::vector<PositiveMap> golden_psi(std::uint64_t seed) {
  std::vector<PositiveMap> out;
  const auto maps = golden_map_instances(27, derive_seed(seed, "golden-psi"));
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const double nf = operator_norm(maps[i]);
    const double scale = (i % 2 == 0 ? 1.0 : 0.5) / nf;
    out.emplace_back(scale * maps[i].matrix, maps[i].domain, maps[i].codomain);
  }
  const auto g = golden_instances();
  const MapSpace reals = aou_space(Cone::orthant(1), Vector{1});
  for (const auto& inst : g) {
    if (inst.name == "l1-orthant2") out.emplace_back(DenseMatrix::from_rows({Vector{1, 1}}, 2), inst.space, reals);
    if (inst.name == "l2-orthant2")
      out.emplace_back(DenseMatrix::from_rows({Vector{0.5, 0.5}}, 2), inst.space, reals);
  }
  return out;
}

Outcome ac6(std::uint64_t seed) {
  Outcome o;
  const auto psis = golden_psi(seed);
  for (std::size_t i = 0; i < psis.size(); ++i) {
    const PropertyReport r = check_universal_property(psis[i], options(seed, "psi-" + std::to_string(i), 1000));
    o.require(r.verdict == Verdict::Pass, failure("psi-" + std::to_string(i), r));
  }
  if (o.pass) o.detail = std::to_string(psis.size()) + " maps: factorization, unitality and reconstruction hold";
  return o;
}

bool same_vertex_set(std::vector<Vector> got, std::vector<Vector> want, double tol) {
  if (got.size() != want.size()) return false;
  for (const auto& w : want) {
    const auto it = std::find_if(got.begin(), got.end(), [&](const Vector& v) { return max_abs_diff(v, w) <= tol; });
    if (it == got.end()) return false;
    got.erase(it);
  }
  return true;
}

Outcome ac7(std::uint64_t seed) {
  Outcome o;
  std::size_t idem = 0;
  for (const auto& g : golden_instances()) {
    const PropertyReport le = check_pu_bounded_by_p(g.space, options(seed, g.name + "/pu-le-p", 10'000));
    o.require(le.passed(), failure(g.name, le));
    if (g.name == "linf-orthant2") {
      const PropertyReport eq = check_pu_equals_p(g.space, options(seed, g.name + "/pu-eq-p", 10'000));
      o.require(eq.passed(), failure(g.name, eq));
    }
    if (g.polyhedral_pu) {
      const PropertyReport id = check_idempotence(g.space, options(seed, g.name + "/idempotence", 1000));
      o.require(id.passed(), failure(g.name, id));
      const PropertyReport st = check_stability(g.space, options(seed, g.name + "/stability", 10'000));
      o.require(st.passed(), failure(g.name, st));
      ++idem;
    }
  }
  const auto hex = full_hull_ball_vertices(Seminorm::lq(2, 1.0), Cone::orthant(2));
  o.require(same_vertex_set(hex, {Vector{1, 0}, Vector{0, 1}, Vector{-1, 1}, Vector{-1, 0}, Vector{0, -1}, Vector{1, -1}},
                            1e-9),
            "l1 full hull vertex set differs from the hexagon");
  if (o.pass)
    o.detail = "p_u <= p on all golden instances; l-inf equality; idempotence and stability on " + std::to_string(idem) +
               " polyhedral instances; hexagon matches";
  return o;
}

Outcome ac8(std::uint64_t seed) {
  Outcome o;
  std::size_t n = 0;
  for (const auto& g : golden_instances()) {
    if (g.space.seminorm.kind() != SeminormKind::OrderUnit) continue;
    const PropertyReport r = check_archimedeanization(g.space, options(seed, g.name + "/archimedeanization", 1000));
    o.require(r.verdict == Verdict::Pass, failure(g.name, r));
    ++n;
  }
  o.require(n > 0, "no order unit instances");
  if (o.pass) o.detail = std::to_string(n) + " order unit instances: isometric embedding, retractions fix it";
  return o;
}

Outcome ac9(std::uint64_t seed) {
  Outcome o;
  double worst = 0.0;
  for (std::size_t n : {2u, 3u, 8u, 16u}) {
    const std::string tag = "n=" + std::to_string(n);
    const PropertyReport r = check_cstar_unitization_agreement(n, 1000, derive_seed(seed, "cstar/" + tag));
    o.require(r.verdict == Verdict::Pass, failure(tag, r));
    // independent: LDL^T bisection for d, and the norm identity at 1e-9
    std::mt19937_64 rng(derive_seed(seed, "cstar-oracle/" + tag));
    for (int s = 0; s < 1000; ++s) {
      const Vector g = oracle::gaussian(rng, n * n);
      DenseMatrix a(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = g[i * n + j];
      const HermitianElement h{a};
      const double d = dist_psd_opnorm(h);
      const double ref = oracle::dist_by_bisection(a);
      worst = std::max(worst, std::abs(d - ref));
      o.require(std::abs(d - ref) <= 1e-9 * std::max(1.0, ref), tag + ": d(a) differs from the LDL bisection");
      const PosNegParts parts = pos_neg_parts(h);
      const double na = operator_norm(h);
      const double np = operator_norm(HermitianElement{parts.plus});
      const double nm = operator_norm(HermitianElement{parts.minus});
      o.require(std::abs(na - std::max(np, nm)) <= 1e-9 * std::max(1.0, na), tag + ": ||a|| != max(||a+||, ||a-||)");
    }
  }
  if (o.pass) o.detail = "n in {2,3,8,16}, 1000 matrices each; max |d - oracle| " + fmt(worst);
  return o;
}

Outcome ac10(std::uint64_t seed) {
  Outcome o;
  for (const char* suite : {"golden", "random", "broken"}) {
    const std::string a = format_suite_tsv(run_suite(suite, seed));
    const std::string b = format_suite_tsv(run_suite(suite, seed));
    o.require(a == b, std::string(suite) + " suite output differs between runs");
  }
  if (o.pass) o.detail = "golden, random and broken reports byte-identical across two runs";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::uint64_t seed = 0;
  std::vector<int> only;
  app.add_option("--seed", seed, "base seed");
  app.add_option("--only", only, "criteria to run (1-10)");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome(std::uint64_t)>> criteria = {ac1, ac2, ac3, ac4, ac5,
                                                                       ac6, ac7, ac8, ac9, ac10};
  bool all = true;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && std::find(only.begin(), only.end(), static_cast<int>(i + 1)) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i](seed);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("AC%zu %s %s [%.2fs]\n", i + 1, out.pass ? "PASS" : "FAIL", out.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && out.pass;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("total %.2fs\n", total);
  return all ? 0 : 1;
}
