#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ovs/distance.hpp"
#include "ovs/eigen.hpp"
#include "ovs/errors.hpp"
#include "ovs/svec.hpp"

using namespace ovs;

TEST_CASE("dist_to_cone: orthant examples") {
  const auto k = Cone::orthant(2);
  CHECK(dist_to_cone(Vector{-1, 0}, k, Seminorm::lq(2, 1.0)) == doctest::Approx(1.0));
  CHECK(dist_to_cone(Vector{-1, -1}, k, Seminorm::lq(2, kInf)) == doctest::Approx(1.0));
  CHECK(dist_to_cone(Vector{-1, -1}, k, Seminorm::lq(2, 2.0)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(dist_to_cone(Vector{3, 4}, Cone::zero(2), Seminorm::lq(2, 2.0)) == doctest::Approx(5.0));
  CHECK(dist_to_cone(Vector{3, 4}, Cone::full(2), Seminorm::lq(2, 2.0)) == 0.0);
}

TEST_CASE("dist_to_cone: psd with the identity order unit") {
  const Vector a = svec(DenseMatrix::diagonal(Vector{2, -3}));
  const auto k = Cone::psd(2);
  const auto mu = Seminorm::order_unit(k, svec(DenseMatrix::identity(2)));
  CHECK(select_distance_method(k, mu) == DistanceMethod::SpectralClosedForm);
  // eigen oracle: max(0, -lambda_min)
  CHECK(dist_to_cone(a, k, mu) == doctest::Approx(std::max(0.0, -min_eigenvalue(smat(a)))));
  CHECK(dist_to_cone(a, k, mu) == doctest::Approx(3.0));
  const Vector y = dist_witness(a, k, mu);
  CHECK(max_abs_diff(y, svec(DenseMatrix::diagonal(Vector{2, 0}))) <= 1e-12);
}

TEST_CASE("dist_witness examples") {
  const auto k = Cone::orthant(2);
  const auto l2 = Seminorm::lq(2, 2.0);
  CHECK(max_abs_diff(dist_witness(Vector{-1, 2}, k, l2), Vector{0, 2}) <= 1e-12);
  CHECK(max_abs_diff(dist_witness(Vector{-1, 2}, k, l2, {}, DistanceMethod::NNLS), Vector{0, 2}) <= 1e-12);
  for (const auto& p : {Seminorm::lq(2, 1.0), l2, Seminorm::lq(2, kInf)}) {
    CHECK(max_abs_diff(dist_witness(Vector{3, 4}, k, p), Vector{3, 4}) <= 1e-12);
    const auto generic = p.q() == 2.0 ? DistanceMethod::NNLS : DistanceMethod::LP;
    CHECK(max_abs_diff(dist_witness(Vector{3, 4}, k, p, {}, generic), Vector{3, 4}) <= 1e-9);
  }
  CHECK_THROWS_AS(dist_witness(Vector{1, -1}, k, l2, {}, DistanceMethod::Bisection), UnsupportedError);
}

TEST_CASE("dispatch rejects unsupported pairs with the table") {
  const auto ice = Cone::ice_cream(Seminorm::lq(2, 2.0));
  try {
    (void)dist_to_cone(Vector{1, 1, 1}, ice, Seminorm::lq(3, 2.0));
    FAIL("expected an UnsupportedError");
  } catch (const UnsupportedError& e) {
    CHECK(std::string(e.what()).find("polyhedral cone, polyhedral seminorm") != std::string::npos);
  }
  CHECK_THROWS_AS(dist_to_cone(Vector(3), Cone::psd(2), Seminorm::lq(3, 1.0)), UnsupportedError);
}

TEST_CASE("method cross-agreement against the brute-force oracle") {
  std::mt19937_64 rng(41);
  int instances = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 2 + trial % 3;
    std::vector<Vector> gens;
    for (std::size_t i = 0; i < d + trial % 2; ++i) gens.push_back(oracle::gaussian(rng, d));
    const auto k = Cone::vpoly(d, gens);
    for (double q : {1.0, 2.0, kInf}) {
      const auto p = Seminorm::lq(d, q);
      const Vector x = oracle::gaussian(rng, d, 2.0);
      const double fast = dist_to_cone(x, k, p);
      const double bis = dist_to_cone(x, k, p, {}, DistanceMethod::Bisection);
      const double brute = oracle::brute_distance(x, k.generator_list(), q);
      CHECK(std::fabs(fast - brute) <= 1e-7);
      CHECK(std::fabs(bis - brute) <= 1e-7);
      const Vector y = dist_witness(x, k, p);
      CHECK(k.contains(y, TolerancePolicy{1e-8}));
      CHECK(std::fabs(p.eval(x - y) - fast) <= 1e-9);
      ++instances;
    }
  }
  CHECK(instances == 180);
}

TEST_CASE("orthant closed form agrees with lp and nnls") {
  std::mt19937_64 rng(42);
  const auto k = Cone::orthant(4);
  const auto kv = Cone::vpoly(4, k.generator_list());
  for (int i = 0; i < 200; ++i) {
    const Vector x = oracle::gaussian(rng, 4);
    for (double q : {1.0, 2.0, kInf}) {
      const auto p = Seminorm::lq(4, q);
      CHECK(dist_to_cone(x, k, p) == doctest::Approx(dist_to_cone(x, kv, p)).epsilon(1e-9));
    }
    const auto w = Seminorm::weighted_lq(Vector{1, 2, 3, 0.5}, 1.0);
    CHECK(dist_to_cone(x, k, w) == doctest::Approx(dist_to_cone(x, kv, w)).epsilon(1e-9));
  }
}

TEST_CASE("distance properties") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> pos(0.1, 5.0);
  const auto halfplane = Cone::hpoly(3, {Vector{0, 0, 1}, Vector{1, 0, 1}});
  const std::vector<std::pair<Cone, Seminorm>> cases = {
      {Cone::orthant(3), Seminorm::lq(3, 1.0)},
      {Cone::vpoly(3, {Vector{1, 0, 0}, Vector{0, 1, 1}, Vector{0, -1, 1}}), Seminorm::lq(3, 2.0)},
      {halfplane, Seminorm::lq(3, kInf)},
      {halfplane, Seminorm::pullback(DenseMatrix::from_rows({Vector{1, 1, 0}}, 3), Seminorm::lq(1, 2.0))},
      {Cone::orthant(3), Seminorm::order_unit(Cone::orthant(3), Vector{1, 2, 3})}};
  for (const auto& [k, p] : cases) {
    const auto lin = lineality_space(k);
    for (int i = 0; i < 200; ++i) {
      const Vector x = oracle::gaussian(rng, 3), y = oracle::gaussian(rng, 3);
      const double dx = dist_to_cone(x, k, p), dy = dist_to_cone(y, k, p);
      const double a = pos(rng);
      CHECK(dist_to_cone(a * x, k, p) == doctest::Approx(a * dx).epsilon(1e-9).scale(1.0));
      CHECK(dist_to_cone(x + y, k, p) <= dx + dy + 1e-9);
      CHECK(std::fabs(dx - dy) <= p.eval(x - y) + 1e-9);
      for (const auto& b : lin.basis())
        CHECK(dist_to_cone(x + pos(rng) * b, k, p) == doctest::Approx(dx).epsilon(1e-9).scale(1.0));
      if (k.contains(x)) CHECK(dx <= 1e-9);
    }
  }
}

TEST_CASE("distance to a declared closure is distance to the closure") {
  ConePredicate pred;
  pred.pieces.push_back({{Vector{0, 1}}, {}, {}});
  pred.pieces.push_back({{}, {Vector{1, 0}}, {Vector{0, 1}}});
  const auto k = Cone::declared_closure(pred, Cone::hpoly(2, {Vector{0, 1}}));
  const auto l2 = Seminorm::lq(2, 2.0);
  CHECK(dist_to_cone(Vector{-1, 0}, k, l2) == doctest::Approx(0.0));
  CHECK(dist_to_cone(Vector{5, -2}, k, l2) == doctest::Approx(2.0));
}

TEST_CASE("psd frobenius distance is the norm of the negative part") {
  std::mt19937_64 rng(44);
  const auto k = Cone::psd(3);
  const auto fro = Seminorm::lq(6, 2.0);
  for (int i = 0; i < 100; ++i) {
    const Vector x = oracle::gaussian(rng, 6);
    const auto e = jacobi_eigen(smat(x));
    double s = 0.0;
    for (double v : e.values) s += v < 0 ? v * v : 0.0;
    CHECK(dist_to_cone(x, k, fro) == doctest::Approx(std::sqrt(s)));
    CHECK(norm2(x - dist_witness(x, k, fro)) == doctest::Approx(std::sqrt(s)));
  }
}
