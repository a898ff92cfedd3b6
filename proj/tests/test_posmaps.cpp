#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ovs/errors.hpp"
#include "ovs/posmaps.hpp"

using namespace ovs;

namespace {

SeminormedSpace sn(Cone k, Seminorm p) { return SeminormedSpace{std::move(k), std::move(p)}; }

DenseMatrix mat(std::initializer_list<Vector> rows, std::size_t cols) { return DenseMatrix::from_rows(rows, cols); }

// Upper bound by sampling the domain unit sphere: no sample may beat the reported norm, and the
// reported maximizer must attain it.
void certify_norm(const PositiveMap& f, const OperatorNorm& r, std::mt19937_64& rng, int samples = 2000) {
  const std::size_t n = space_dim(f.domain);
  const double at = space_norm(f.codomain, f.apply(r.maximizer));
  CHECK(space_norm(f.domain, r.maximizer) <= 1.0 + 1e-9);
  CHECK(at == doctest::Approx(r.value).epsilon(1e-9));
  for (int i = 0; i < samples; ++i) {
    const Vector x = oracle::gaussian(rng, n);
    const double px = space_norm(f.domain, x);
    if (px <= 1e-12) continue;
    CHECK(space_norm(f.codomain, f.apply(x)) <= r.value * px * (1.0 + 1e-9) + 1e-12);
  }
}

// A positive map from (R^n, orthant, lq) into the order unit space (R^m, orthant, w).
PositiveMap golden_map(std::mt19937_64& rng, std::size_t n, std::size_t m, double q) {
  std::uniform_real_distribution<double> unif(0.0, 2.0);
  DenseMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = unif(rng) < 0.4 ? 0.0 : unif(rng);
  for (std::size_t i = 0; i < m; ++i) a(i, i % n) += 0.25;
  Vector w(m);
  for (auto& v : w) v = 0.5 + unif(rng);
  return PositiveMap(a, sn(Cone::orthant(n), Seminorm::lq(n, q)), aou_space(Cone::orthant(m), w));
}

}  // namespace

TEST_CASE("is_positive examples") {
  const PositiveMap emb(mat({Vector{1}, Vector{0}}, 1), sn(Cone::orthant(1), Seminorm::lq(1, 1.0)),
                        sn(Cone::orthant(2), Seminorm::lq(2, kInf)));
  auto r = is_positive(emb);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.exact);

  const PositiveMap neg(mat({Vector{-1}}, 1), sn(Cone::orthant(1), Seminorm::lq(1, 1.0)),
                        sn(Cone::orthant(1), Seminorm::lq(1, 1.0)));
  r = is_positive(neg);
  CHECK(r.verdict == Verdict::Fail);
  REQUIRE(r.witness);
  CHECK(max_abs_diff(*r.witness, Vector{1}) == 0.0);

  const auto orth = sn(Cone::orthant(2), Seminorm::lq(2, 1.0));
  const PositiveMap rot(mat({Vector{0, 1}, Vector{-1, 0}}, 2), orth, orth);
  r = is_positive(rot);
  CHECK(r.verdict == Verdict::Fail);
  REQUIRE(r.witness);
  CHECK(max_abs_diff(*r.witness, Vector{1, 0}) == 0.0);

  CHECK_THROWS_AS(PositiveMap(DenseMatrix(2, 3), orth, orth), DimensionError);
}

TEST_CASE("is_positive on a non-polyhedral domain samples and targets") {
  // trace is positive on PSD; a functional with a negative eigen-direction is not
  const MapSpace psd = sn(Cone::psd(2), Seminorm::lq(3, 2.0));
  const MapSpace r1 = aou_space(Cone::orthant(1), Vector{1});
  const PositiveMap trace(mat({Vector{1, 0, 1}}, 3), psd, r1);
  auto r = is_positive(trace, {2000, 7});
  CHECK(r.verdict == Verdict::Pass);
  CHECK_FALSE(r.exact);
  CHECK(r.samples >= 2000);
  const PositiveMap bad(mat({Vector{1, 0, -0.01}}, 3), psd, r1);
  r = is_positive(bad, {2000, 7});
  CHECK(r.verdict == Verdict::Fail);
  REQUIRE(r.witness);
  CHECK(Cone::psd(2).contains(*r.witness));
  CHECK(bad.apply(*r.witness)[0] < 0.0);
}

TEST_CASE("operator_norm examples") {
  std::mt19937_64 rng(61);
  const auto unit11 = aou_space(Cone::orthant(2), Vector{1, 1});
  const PositiveMap id_inf(DenseMatrix::identity(2), sn(Cone::orthant(2), Seminorm::lq(2, kInf)), unit11);
  auto r = operator_norm_detail(id_inf);
  CHECK(r.value == doctest::Approx(1.0));
  certify_norm(id_inf, r, rng);

  const PositiveMap sum(mat({Vector{1, 1}}, 2), sn(Cone::orthant(2), Seminorm::lq(2, kInf)),
                        sn(Cone::orthant(1), Seminorm::lq(1, 1.0)));
  r = operator_norm_detail(sum);
  CHECK(r.value == doctest::Approx(2.0));
  certify_norm(sum, r, rng);

  const PositiveMap id_l2(DenseMatrix::identity(2), sn(Cone::orthant(2), Seminorm::lq(2, 2.0)), unit11);
  r = operator_norm_detail(id_l2);
  CHECK(r.value == doctest::Approx(1.0));
  certify_norm(id_l2, r, rng);

  // unsupported: l2 domain into an l2 codomain
  const PositiveMap l2l2(DenseMatrix::identity(2), sn(Cone::orthant(2), Seminorm::lq(2, 2.0)),
                         sn(Cone::orthant(2), Seminorm::lq(2, 2.0)));
  CHECK_THROWS_AS(operator_norm(l2l2), UnsupportedError);
}

TEST_CASE("operator norms certified on random maps") {
  std::mt19937_64 rng(62);
  for (int t = 0; t < 30; ++t) {
    for (double q : {1.0, 2.0, kInf}) {
      const auto f = golden_map(rng, 1 + t % 3, 1 + (t / 3) % 3, q);
      const auto r = operator_norm_detail(f);
      certify_norm(f, r, rng, 300);
    }
  }
}

TEST_CASE("extend_g_alpha examples") {
  const auto line = sn(Cone::orthant(1), Seminorm::lq(1, 1.0));
  const PositiveMap id(DenseMatrix::identity(1), line, aou_space(Cone::orthant(1), Vector{1}));
  CHECK(operator_norm(id) == doctest::Approx(1.0));

  const auto g_half = extend_g_alpha(id, 0.5);
  auto r = is_positive(g_half);
  CHECK(r.verdict == Verdict::Fail);
  REQUIRE(r.witness);
  CHECK(space_contains(g_half.domain, *r.witness));
  CHECK(g_half.apply(*r.witness)[0] < 0.0);
  // the pinned witness (-0.5, 0.5)
  CHECK(space_contains(g_half.domain, Vector{-0.5, 0.5}));
  CHECK(g_half.apply(Vector{-0.5, 0.5})[0] == doctest::Approx(-0.25));

  const auto g1 = extend_g_alpha(id, 1.0);
  CHECK(is_positive(g1).verdict == Verdict::Pass);
  CHECK(operator_norm(g1) == doctest::Approx(1.0));
  CHECK(is_positive(extend_g_alpha(id, 2.0)).verdict == Verdict::Pass);
}

TEST_CASE("extend_g_alpha rejects maps that do not vanish on N") {
  // the halfplane x2 >= 0 has lineality span{e1}; the identity does not kill it
  const auto hp = sn(Cone::hpoly(2, {Vector{0, 1}}), Seminorm::lq(2, 1.0));
  const PositiveMap f(DenseMatrix::identity(2), hp, aou_space(Cone::orthant(2), Vector{1, 1}));
  CHECK_THROWS_AS(extend_g_alpha(f, 1.0), PreconditionError);
  const PositiveMap g(mat({Vector{0, 1}}, 2), hp, aou_space(Cone::orthant(1), Vector{1}));
  CHECK_NOTHROW(extend_g_alpha(g, 1.0));
  // a codomain without an order unit is rejected
  CHECK_THROWS_AS(extend_g_alpha(PositiveMap(mat({Vector{0, 1}}, 2), hp, sn(Cone::orthant(1), Seminorm::lq(1, 2.0))), 1.0),
                  PreconditionError);
}

TEST_CASE("threshold sharpness of g_alpha") {
  std::mt19937_64 rng(63);
  int instances = 0;
  for (int t = 0; t < 18; ++t) {
    const double q = t % 3 == 0 ? 1.0 : t % 3 == 1 ? 2.0 : kInf;
    const auto f = golden_map(rng, 1 + t % 3, 1 + (t / 3) % 3, q);
    const double nf = operator_norm(f);
    REQUIRE(nf > 0.0);
    const auto below = extend_g_alpha(f, 0.999 * nf);
    const auto rb = is_positive(below, {10000, static_cast<std::uint64_t>(t)});
    CHECK(rb.verdict == Verdict::Fail);
    REQUIRE(rb.witness);
    CHECK(space_contains(below.domain, *rb.witness));
    CHECK_FALSE(space_contains(below.codomain, below.apply(*rb.witness)));
    const auto above = extend_g_alpha(f, 1.001 * nf);
    const auto ra = is_positive(above, {10000, static_cast<std::uint64_t>(t)});
    CHECK(ra.verdict == Verdict::Pass);
    CHECK(operator_norm(above) == doctest::Approx(1.001 * nf).epsilon(1e-9));
    ++instances;
  }
  CHECK(instances == 18);
}

TEST_CASE("universal_extension") {
  const auto unit11 = aou_space(Cone::orthant(2), Vector{1, 1});
  const PositiveMap id(DenseMatrix::identity(2), unit11, unit11);
  const auto t = universal_extension(id);
  std::mt19937_64 rng(64);
  const auto& u = std::get<UnitizedSpace>(t.domain);
  for (int i = 0; i < 200; ++i) {
    const Vector x = oracle::gaussian(rng, 2);
    const double lam = oracle::gaussian(rng, 1)[0];
    CHECK(max_abs_diff(t.apply(to_coordinates(u.element(x, lam))), x + lam * Vector{1, 1}) <= 1e-12);
    CHECK(max_abs_diff(t.apply(to_coordinates(canonical_map(u, x))), id.apply(x)) <= 1e-12);
  }
  CHECK(max_abs_diff(t.apply(to_coordinates(u.unit())), Vector{1, 1}) == 0.0);

  const PositiveMap zero(DenseMatrix(2, 2), unit11, unit11);
  const auto tz = universal_extension(zero);
  CHECK(max_abs_diff(tz.apply(Vector{3, -1, 2}), Vector{2, 2}) == 0.0);

  const PositiveMap half(0.5 * DenseMatrix::identity(2), unit11, unit11);
  const auto th = universal_extension(half);
  CHECK(max_abs_diff(th.apply(to_coordinates(u.unit())), Vector{1, 1}) == 0.0);
  CHECK(max_abs_diff(half.apply(Vector{1, 1}), Vector{0.5, 0.5}) == 0.0);

  const PositiveMap twice(2.0 * DenseMatrix::identity(2), unit11, unit11);
  try {
    (void)universal_extension(twice);
    FAIL("expected rejection");
  } catch (const PreconditionError& e) {
    REQUIRE(e.witness().size() == 2);
    const Vector w(e.witness());
    CHECK(space_norm(twice.codomain, twice.apply(w)) > space_norm(twice.domain, w));
  }
  const auto orth = sn(Cone::orthant(2), Seminorm::lq(2, 1.0));
  const PositiveMap rot(mat({Vector{0, 1}, Vector{-1, 0}}, 2), orth, unit11);
  CHECK_THROWS_AS(universal_extension(rot), PreconditionError);
}

TEST_CASE("norm_preserving_extension") {
  const auto line = sn(Cone::orthant(1), Seminorm::lq(1, 1.0));
  const auto r1 = aou_space(Cone::orthant(1), Vector{1});
  const PositiveMap id(DenseMatrix::identity(1), line, r1);
  const auto g = norm_preserving_extension(id);
  CHECK(max_abs_diff(g.apply(Vector{0.3, 2}), Vector{2.3}) <= 1e-15);
  const auto g0 = norm_preserving_extension(PositiveMap(DenseMatrix(1, 1), line, r1));
  CHECK(max_abs_diff(g0.apply(Vector{0.3, 2}), Vector{0}) == 0.0);

  std::mt19937_64 rng(65);
  for (int t = 0; t < 12; ++t) {
    const auto f = golden_map(rng, 1 + t % 3, 1 + t % 2, t % 2 ? 1.0 : kInf);
    const double nf = operator_norm(f);
    const auto e = norm_preserving_extension(f);
    CHECK(is_positive(e).verdict == Verdict::Pass);
    CHECK(operator_norm(e) == doctest::Approx(nf).epsilon(1e-9));
    const auto& u = std::get<UnitizedSpace>(e.domain);
    const Vector w = *space_unit(f.codomain);
    CHECK(max_abs_diff(e.apply(to_coordinates(u.unit())), nf * w) <= 1e-12);
  }

  // h(x, lambda) = (x + lambda, 0) is another positive extension of the same norm that misses the unit
  const auto ue = build_unitization(line);
  const PositiveMap h(mat({Vector{1, 1}, Vector{0, 0}}, 2), ue, aou_space(Cone::orthant(2), Vector{1, 1}));
  CHECK(is_positive(h).verdict == Verdict::Pass);
  CHECK(operator_norm(h) == doctest::Approx(1.0));
  CHECK(max_abs_diff(h.apply(Vector{0.7, 0}), Vector{0.7, 0}) == 0.0);
  const Vector hu = h.apply(Vector{0, 1});
  CHECK(hu[0] != hu[1]);
}

TEST_CASE("unitize_map") {
  const auto orth = sn(Cone::orthant(2), Seminorm::lq(2, 1.0));
  const auto fid = unitize_map(PositiveMap(DenseMatrix::identity(2), orth, orth));
  CHECK(max_abs_diff(fid.matrix, DenseMatrix::identity(3)) <= 1e-12);

  const auto line = sn(Cone::orthant(1), Seminorm::lq(1, 1.0));
  const auto f2 = unitize_map(PositiveMap(2.0 * DenseMatrix::identity(1), line, line));
  CHECK(max_abs_diff(f2.matrix, DenseMatrix::diagonal(Vector{2, 2})) <= 1e-12);
  const auto f0 = unitize_map(PositiveMap(DenseMatrix(1, 1), line, line));
  CHECK(max_abs_diff(f0.matrix, DenseMatrix(2, 2)) == 0.0);

  std::mt19937_64 rng(66);
  std::uniform_real_distribution<double> unif(0.0, 1.5);
  for (int t = 0; t < 12; ++t) {
    DenseMatrix a(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) a(i, j) = unif(rng);
    const auto dom = sn(Cone::orthant(2), Seminorm::lq(2, t % 2 ? 1.0 : kInf));
    const auto cod = sn(Cone::vpoly(2, {Vector{1, 0}, Vector{0, 1}, Vector{1, -0.2}}), Seminorm::lq(2, t % 3 ? kInf : 1.0));
    const PositiveMap f(a, dom, cod);
    REQUIRE(is_positive(f).verdict == Verdict::Pass);
    const auto ft = unitize_map(f);
    CHECK(is_positive(ft).verdict == Verdict::Pass);
    CHECK(operator_norm(ft) == doctest::Approx(operator_norm(f)).epsilon(1e-9));
  }
}

TEST_CASE("operator norm is unchanged by one-max-normalizing the domain") {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 12; ++t) {
    const double q = t % 2 ? 1.0 : kInf;
    const auto f = golden_map(rng, 2, 1 + t % 3, q);
    const auto& e = std::get<SeminormedSpace>(f.domain);
    const PositiveMap fu(f.matrix, SeminormedSpace{e.cone, one_max_normalization(e)}, f.codomain);
    CHECK(operator_norm(fu) == doctest::Approx(operator_norm(f)).epsilon(1e-9));
  }
}

TEST_CASE("retractions of the unitization of an order unit space") {
  const auto mu = Seminorm::order_unit(Cone::orthant(2), Vector{1, 1});
  const SeminormedSpace e{Cone::orthant(2), mu};
  const auto u = build_unitization(e);
  const auto proj = retract_projection(u);
  CHECK(max_abs_diff(proj.apply(Vector{1, 2, 5}), Vector{1, 2, 0}) <= 1e-15);
  CHECK(max_abs_diff(proj.apply(Vector{0, 0, 1}), Vector{0, 0, 0}) == 0.0);

  // the literal projection is not positive: ((-0.5, -0.5), 1) lies in the cone, its image does not
  const auto rp = is_positive(proj);
  CHECK(rp.verdict == Verdict::Fail);
  CHECK(space_contains(proj.domain, Vector{-0.5, -0.5, 1}));
  CHECK_FALSE(space_contains(proj.codomain, proj.apply(Vector{-0.5, -0.5, 1})));

  const auto ret = universal_retraction(u);
  const auto rr = is_positive(ret);
  CHECK(rr.verdict == Verdict::Pass);
  CHECK(rr.exact);

  const auto arch = archimedeanization(e);
  std::mt19937_64 rng(68);
  for (int i = 0; i < 300; ++i) {
    const Vector v = oracle::gaussian(rng, 3);
    // idempotent
    CHECK(max_abs_diff(ret.apply(ret.apply(v)), ret.apply(v)) <= 1e-12);
    CHECK(max_abs_diff(proj.apply(proj.apply(v)), proj.apply(v)) <= 1e-12);
    // identity on the embedded Archimedeanization
    const Vector z = oracle::gaussian(rng, 2);
    const Vector emb = to_coordinates(embed_archimedeanization(arch, u, z));
    CHECK(max_abs_diff(ret.apply(emb), emb) <= 1e-12);
    CHECK(max_abs_diff(proj.apply(emb), emb) <= 1e-12);
    // the retraction is contractive for the unitized norm
    CHECK(space_norm(ret.codomain, ret.apply(v)) <= space_norm(ret.domain, v) + 1e-9);
  }
  CHECK_THROWS_AS(retract_projection(build_unitization({Cone::orthant(2), Seminorm::lq(2, 1.0)})), PreconditionError);
}
