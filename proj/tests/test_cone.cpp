#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ovs/cone.hpp"
#include "ovs/errors.hpp"
#include "ovs/polyhedra.hpp"
#include "ovs/seminorm.hpp"
#include "ovs/svec.hpp"

using namespace ovs;

namespace {

Cone open_halfplane_with_axis() {
  ConePredicate pred;
  pred.description = "open upper halfplane with the nonnegative x-axis";
  pred.pieces.push_back({{Vector{0, 1}}, {}, {}});
  pred.pieces.push_back({{}, {Vector{1, 0}}, {Vector{0, 1}}});
  return Cone::declared_closure(pred, Cone::hpoly(2, {Vector{0, 1}}));
}

HPolytope l1_ball_2d() {
  HPolytope p;
  p.dim = 2;
  for (double a : {1.0, -1.0})
    for (double b : {1.0, -1.0}) p.add(Vector{a, b}, 1.0);
  return p;
}

}  // namespace

TEST_CASE("contains: examples") {
  const TolerancePolicy tol;
  CHECK(Cone::orthant(2).contains(Vector{1, 0}, tol));
  CHECK_FALSE(Cone::orthant(2).contains(Vector{1, -0.1}, tol));
  const auto ice = Cone::ice_cream(Seminorm::lq(2, 2.0));
  CHECK(ice.contains(Vector{3, 4, 5}, tol));
  CHECK_FALSE(ice.contains(Vector{3, 4, 4.9}, tol));
  const auto psd = Cone::psd(2);
  CHECK_FALSE(psd.contains(svec(DenseMatrix::diagonal(Vector{2, -3})), tol));
  CHECK(psd.contains(svec(DenseMatrix::diagonal(Vector{2, 0})), tol));
  CHECK(Cone::zero(3).contains(Vector{0, 0, 0}, tol));
  CHECK_FALSE(Cone::zero(3).contains(Vector{0, 1e-3, 0}, tol));
  CHECK(Cone::full(2).contains(Vector{-5, 7}, tol));
  CHECK_THROWS_AS(Cone::orthant(2).contains(Vector{1, 2, 3}, tol), DimensionError);
}

TEST_CASE("lineality space and properness") {
  const auto k = Cone::vpoly(2, {Vector{1, 0}, Vector{-1, 0}, Vector{0, 1}});
  const auto lin = lineality_space(k);
  REQUIRE(lin.dim() == 1);
  CHECK(std::fabs(lin.basis()[0][0]) == doctest::Approx(1.0));
  // oracle: +-generator LP membership
  for (const auto& b : lin.basis()) {
    CHECK(k.contains(b));
    CHECK(k.contains(-b));
  }
  CHECK_FALSE(is_proper(k));
  CHECK(lineality_space(Cone::orthant(4)).is_zero());
  CHECK(lineality_space(Cone::full(2)).dim() == 2);
  CHECK(is_proper(Cone::orthant(3)));
  CHECK(is_proper(Cone::zero(4)));
  CHECK(lineality_space(Cone::hpoly(3, {Vector{0, 0, 1}})).dim() == 2);
  CHECK(lineality_space(open_halfplane_with_axis()).dim() == 1);
}

TEST_CASE("is_archimedean") {
  CHECK(is_archimedean(Cone::orthant(3)).archimedean);
  CHECK_FALSE(is_archimedean(Cone::vpoly(2, {Vector{1, 0}, Vector{-1, 0}, Vector{0, 1}})).archimedean);
  const auto r = is_archimedean(open_halfplane_with_axis());
  CHECK_FALSE(r.archimedean);
  REQUIRE(r.witness.has_value());
  CHECK(max_abs_diff(*r.witness, Vector{-1, 0}) <= 1e-12);
}

TEST_CASE("declared closure rejects a predicate leaving the closure") {
  ConePredicate bad;
  bad.pieces.push_back({{}, {Vector{1, 0}}, {}});  // right halfplane is not inside {x2 >= 0}
  CHECK_THROWS_AS(Cone::declared_closure(bad, Cone::hpoly(2, {Vector{0, 1}})), PreconditionError);
}

TEST_CASE("dual cone") {
  CHECK(dual_cone(Cone::orthant(2)).kind() == ConeKind::Orthant);
  CHECK(dual_cone(Cone::full(2)).kind() == ConeKind::Zero);
  const auto d = dual_cone(Cone::vpoly(2, {Vector{1, 0}}));
  CHECK(d.kind() == ConeKind::HPoly);
  CHECK(d.contains(Vector{0.5, -3}));
  CHECK_FALSE(d.contains(Vector{-0.5, 3}));

  // sampled duality: y in dual <=> <y, g> >= 0 for all generators; double dual agrees with K
  const auto k = Cone::vpoly(3, {Vector{1, 0, 1}, Vector{0, 1, 1}, Vector{-1, 0, 1}, Vector{0, -1, 1}});
  const auto kd = dual_cone(k);
  const auto kdd = convert_representation(dual_cone(convert_representation(kd)));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 500; ++i) {
    const Vector y = oracle::gaussian(rng, 3);
    bool direct = true;
    for (const auto& g : k.data()) direct = direct && dot(y, g) >= -1e-9;
    CHECK(kd.contains(y) == direct);
    CHECK(kdd.contains(y) == k.contains(y));
  }
}

TEST_CASE("convert_representation examples") {
  const auto h = convert_representation(Cone::vpoly(2, {Vector{1, 0}, Vector{0, 1}}));
  CHECK(h.kind() == ConeKind::HPoly);
  CHECK(h.data().size() == 2);

  const auto cone2 = convert_representation(Cone::vpoly(2, {Vector{1, 1}, Vector{-1, 1}}));
  // x2 >= x1 and x2 >= -x1
  for (const Vector& x : {Vector{0, 1}, Vector{1, 1}, Vector{-1, 2}})
    CHECK(cone2.contains(x));
  for (const Vector& x : {Vector{1, 0.9}, Vector{0, -1}, Vector{-2, 1}}) CHECK_FALSE(cone2.contains(x));

  const auto half = convert_representation(Cone::hpoly(2, {Vector{1, 1}}));
  CHECK(half.kind() == ConeKind::VPoly);
  for (const Vector& x : {Vector{1, -1}, Vector{-1, 1}, Vector{1, 1}}) CHECK(half.contains(x));
  CHECK_FALSE(half.contains(Vector{-1, -0.5}));
  CHECK_THROWS_AS(convert_representation(Cone::orthant(7)), UnsupportedError);
}

TEST_CASE("conversion round trip agrees on random points") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = 2 + trial % 4;
    std::vector<Vector> gens;
    for (std::size_t i = 0; i < d + 2; ++i) gens.push_back(oracle::gaussian(rng, d));
    if (trial % 3 == 0) gens.push_back(-gens[0]);
    const auto v = Cone::vpoly(d, gens);
    const auto h = convert_representation(v);
    const auto back = convert_representation(h);
    for (int i = 0; i < 1000; ++i) {
      const Vector x = oracle::gaussian(rng, d);
      const bool a = v.contains(x), b = h.contains(x), c = back.contains(x);
      CHECK(a == b);
      CHECK(b == c);
    }
  }
}

TEST_CASE("cone closure under addition and scaling") {
  std::mt19937_64 rng(4);
  const std::vector<Cone> cones = {Cone::orthant(3), Cone::vpoly(3, {Vector{1, 2, 0}, Vector{0, 1, 1}, Vector{1, 0, 1}}),
                                   Cone::hpoly(2, {Vector{1, 1}, Vector{1, -2}}), Cone::psd(3),
                                   Cone::ice_cream(Seminorm::lq(2, 1.0)), Cone::zero(2), Cone::full(2)};
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (const auto& k : cones) {
    for (int i = 0; i < 200; ++i) {
      const Vector x = sample_cone(k, rng), y = sample_cone(k, rng);
      CHECK(k.contains(x));
      CHECK(k.contains(x + y));
      CHECK(k.contains(u(rng) * x));
    }
  }
}

TEST_CASE("vertex and facet enumeration") {
  const auto v = vertex_enumeration(l1_ball_2d());
  CHECK(v.is_bounded());
  CHECK(same_point_set(v.vertices, {Vector{1, 0}, Vector{-1, 0}, Vector{0, 1}, Vector{0, -1}}, 1e-9));
  const auto h = facet_enumeration(v);
  CHECK(h.size() == 4);
  CHECK(is_bounded(h));

  HPolytope slab;
  slab.dim = 2;
  slab.add(Vector{0, 1}, 1);
  slab.add(Vector{0, -1}, 1);
  CHECK_FALSE(is_bounded(slab));
}

TEST_CASE("full hull: l1 ball over the orthant is the hexagon") {
  const auto fh = full_hull(l1_ball_2d(), Cone::orthant(2).generators());
  const std::vector<Vector> hexagon = {Vector{1, 0},  Vector{0, 1},  Vector{-1, 1},
                                       Vector{-1, 0}, Vector{0, -1}, Vector{1, -1}};
  CHECK(same_point_set(fh.vrep.vertices, hexagon, 1e-9));
  // membership oracle: max(||x^-||_1, ||x^+||_1) <= 1
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 2000; ++i) {
    const Vector x{u(rng), u(rng)};
    const double neg = std::max(0.0, -x[0]) + std::max(0.0, -x[1]);
    const double pos = std::max(0.0, x[0]) + std::max(0.0, x[1]);
    const double m = std::max(neg, pos);
    if (std::fabs(m - 1.0) < 1e-9) continue;
    CHECK(fh.hrep.contains(x, 1e-12) == (m <= 1.0));
  }
}

TEST_CASE("full hull: cube over the orthant and any ball over the zero cone") {
  HPolytope cube;
  cube.dim = 2;
  for (std::size_t i = 0; i < 2; ++i) {
    cube.add(Vector::unit(2, i), 1);
    cube.add(-Vector::unit(2, i), 1);
  }
  const auto fh = full_hull(cube, Cone::orthant(2).generators());
  CHECK(same_point_set(fh.vrep.vertices, {Vector{1, 1}, Vector{1, -1}, Vector{-1, 1}, Vector{-1, -1}}, 1e-9));
  const auto fz = full_hull(l1_ball_2d(), Cone::zero(2).generators());
  CHECK(same_point_set(fz.vrep.vertices, vertex_enumeration(l1_ball_2d()).vertices, 1e-9));
}

TEST_CASE("full hull is idempotent and full") {
  std::mt19937_64 rng(12);
  const std::vector<Cone> cones = {Cone::orthant(2), Cone::vpoly(2, {Vector{1, 2}, Vector{2, 1}}),
                                   Cone::vpoly(3, {Vector{1, 0, 0}, Vector{0, 1, 0}, Vector{1, 1, 1}})};
  for (const auto& k : cones) {
    const std::size_t d = k.dim();
    VPolyhedron p;
    p.dim = d;
    for (int i = 0; i < 5; ++i) {
      const Vector v = oracle::gaussian(rng, d);
      p.vertices.push_back(v);
      p.vertices.push_back(-v);
    }
    const auto once = full_hull(p, k.generators());
    const auto twice = full_hull(once.vrep, k.generators());
    CHECK(same_point_set(once.vrep.vertices, twice.vrep.vertices, 1e-9));
    for (const auto& v : p.vertices) CHECK(once.hrep.contains(v, 1e-9));
    // fullness: x <= y <= z with x, z in the hull implies y in the hull
    for (int i = 0; i < 300; ++i) {
      const auto& x = once.vrep.vertices[i % once.vrep.vertices.size()];
      const Vector s = sample_cone(k, rng);
      const Vector z = x + s;
      if (!once.hrep.contains(z, 1e-9)) continue;
      std::uniform_real_distribution<double> t(0.0, 1.0);
      CHECK(once.hrep.contains(x + t(rng) * s, 1e-9));
    }
  }
}

TEST_CASE("double description guard") {
  std::vector<Vector> normals;
  for (std::size_t i = 0; i < 9; ++i) normals.push_back(Vector::unit(9, i));
  CHECK_THROWS_AS(dd_generators(normals, 9), UnsupportedError);
}
