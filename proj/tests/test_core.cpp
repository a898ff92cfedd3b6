#include <cmath>
#include <random>

#include "doctest.h"
#include "ovs/eigen.hpp"
#include "ovs/errors.hpp"
#include "ovs/kernels.hpp"
#include "ovs/linalg.hpp"
#include "ovs/lp.hpp"
#include "ovs/nnls.hpp"
#include "ovs/subspace.hpp"

using namespace ovs;

namespace {

double det3(const Vector& a, const Vector& b, const Vector& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (double& x : v) x = g(rng);
  return v;
}

}  // namespace

TEST_CASE("kernels: avx2 variant matches the scalar reference") {
  const auto* fast = kernels::avx2_table();
  if (fast == nullptr) {
    MESSAGE("avx2 kernels not available on this machine; skipping equivalence");
    return;
  }
  const auto& ref = kernels::scalar_table();
  std::mt19937_64 rng(7);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 13u, 64u, 101u}) {
    auto x = random_values(rng, n);
    auto y = random_values(rng, n);
    const double scale = static_cast<double>(n) + 1.0;
    CHECK(fast->dot(x.data(), y.data(), n) == doctest::Approx(ref.dot(x.data(), y.data(), n)).epsilon(1e-13 * scale));
    CHECK(fast->sum_abs(x.data(), n) == doctest::Approx(ref.sum_abs(x.data(), n)).epsilon(1e-13 * scale));
    CHECK(fast->sum_sq(x.data(), n) == doctest::Approx(ref.sum_sq(x.data(), n)).epsilon(1e-13 * scale));
    CHECK(fast->max_abs(x.data(), n) == ref.max_abs(x.data(), n));
    CHECK(fast->neg_sum(x.data(), n) == doctest::Approx(ref.neg_sum(x.data(), n)).epsilon(1e-13 * scale));
    CHECK(fast->neg_sum_sq(x.data(), n) == doctest::Approx(ref.neg_sum_sq(x.data(), n)).epsilon(1e-13 * scale));
    CHECK(fast->neg_max(x.data(), n) == ref.neg_max(x.data(), n));
    if (n > 0) CHECK(fast->min_entry(x.data(), n) == ref.min_entry(x.data(), n));

    auto y1 = y, y2 = y;
    fast->axpy(0.75, x.data(), y1.data(), n);
    ref.axpy(0.75, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-14));

    auto xa = x, ya = y, xb = x, yb = y;
    fast->rotate(xa.data(), ya.data(), n, 0.6, 0.8);
    ref.rotate(xb.data(), yb.data(), n, 0.6, 0.8);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(xa[i] == doctest::Approx(xb[i]).epsilon(1e-14));
      CHECK(ya[i] == doctest::Approx(yb[i]).epsilon(1e-14));
    }

    const std::size_t rows = n % 5 + 1;
    auto a = random_values(rng, rows * n);
    std::vector<double> out1(rows), out2(rows);
    fast->gemv(a.data(), rows, n, x.data(), out1.data());
    ref.gemv(a.data(), rows, n, x.data(), out2.data());
    for (std::size_t i = 0; i < rows; ++i) CHECK(out1[i] == doctest::Approx(out2[i]).epsilon(1e-13 * scale));
  }
}

TEST_CASE("orthonormalize: spans and Gram matrix") {
  const auto s = orthonormalize({Vector{1, 0}, Vector{0, 1}}, 2);
  CHECK(s.dim() == 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(dot(s.basis()[i], s.basis()[j]) == doctest::Approx(i == j ? 1.0 : 0.0));

  const auto line = orthonormalize({Vector{1, 1}, Vector{2, 2}}, 2);
  REQUIRE(line.dim() == 1);
  CHECK(std::fabs(line.basis()[0][0]) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(line.basis()[0][0] == doctest::Approx(line.basis()[0][1]));

  const Vector a{1, 0, 0}, b{1, 1, 0}, c{1, 1, 1};
  CHECK(std::fabs(det3(a, b, c)) > 0.5);  // oracle: full rank
  CHECK(orthonormalize({a, b, c}, 3).dim() == 3);

  CHECK_THROWS_AS(orthonormalize({Vector{1, 0}, Vector{1, 0, 0}}, 2), DimensionError);
}

TEST_CASE("orthonormalize is idempotent") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vector> vs;
    for (int k = 0; k < 3; ++k) vs.emplace_back(random_values(rng, 5));
    vs.push_back(vs[0] + 2.0 * vs[1]);
    const auto s1 = orthonormalize(vs, 5);
    const auto s2 = orthonormalize(s1.basis(), 5);
    REQUIRE(s1.dim() == s2.dim());
    for (std::size_t i = 0; i < s1.dim(); ++i) CHECK(max_abs_diff(s1.basis()[i], s2.basis()[i]) <= 1e-9);
  }
}

TEST_CASE("quotient_representative") {
  CHECK(quotient_representative(Vector{3, 4}, Subspace(2)) == Vector{3, 4});
  const auto e1 = orthonormalize({Vector{1, 0}}, 2);
  CHECK(max_abs_diff(quotient_representative(Vector{3, 4}, e1), Vector{0, 4}) <= 1e-12);
  const auto diag = orthonormalize({Vector{1, 1}}, 2);
  CHECK(max_abs_diff(quotient_representative(Vector{1, 1}, diag), Vector{0, 0}) <= 1e-12);
}

TEST_CASE("quotient_representative is linear, orthogonal to N and idempotent") {
  std::mt19937_64 rng(3);
  const auto n = orthonormalize({Vector(random_values(rng, 4)), Vector(random_values(rng, 4))}, 4);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    const Vector x(random_values(rng, 4)), y(random_values(rng, 4));
    const double a = g(rng), b = g(rng);
    const Vector lhs = quotient_representative(a * x + b * y, n);
    const Vector rhs = a * quotient_representative(x, n) + b * quotient_representative(y, n);
    CHECK(max_abs_diff(lhs, rhs) <= 1e-9);
    const Vector r = quotient_representative(x, n);
    for (const auto& v : n.basis()) CHECK(std::fabs(dot(r, v)) <= 1e-9);
    CHECK(max_abs_diff(quotient_representative(r, n), r) <= 1e-12);
    CHECK(n.contains(x - r, 1e-9));
  }
}

TEST_CASE("null_space") {
  const auto a = DenseMatrix::from_rows({Vector{1, 1, 0}}, 3);
  const auto ns = null_space(a);
  CHECK(ns.dim() == 2);
  for (const auto& v : ns.basis()) CHECK(std::fabs(a.apply(v)[0]) <= 1e-12);
}

TEST_CASE("solve_lp: absolute value") {
  // min t s.t. t - x >= 0, t + x >= 0 with x fixed at 5 through an equality row.
  LPProblem p;
  p.objective = Vector{1, 0};
  p.constraints = DenseMatrix::from_rows({Vector{1, -1}, Vector{1, 1}, Vector{0, 1}}, 2);
  p.kinds = {RowKind::GreaterEqual, RowKind::GreaterEqual, RowKind::Equal};
  p.rhs = Vector{0, 0, 5};
  p.free_variable = {true, true};
  const auto r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(5.0));
  CHECK(certify_lp(p, r, 1e-9));
}

TEST_CASE("solve_lp: l1 distance to the orthant equals the negative-part norm") {
  // variables c1, c2 >= 0, s1, s2 >= 0; min s1 + s2; s >= x - Gc, s >= -(x - Gc).
  const Vector x{-1, -2};
  LPProblem p;
  p.objective = Vector{0, 0, 1, 1};
  p.constraints = DenseMatrix::from_rows(
      {Vector{1, 0, 1, 0}, Vector{0, 1, 0, 1}, Vector{-1, 0, 1, 0}, Vector{0, -1, 0, 1}}, 4);
  p.kinds.assign(4, RowKind::GreaterEqual);
  p.rhs = Vector{x[0], x[1], -x[0], -x[1]};
  const auto r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Optimal);
  const double oracle = std::max(0.0, -x[0]) + std::max(0.0, -x[1]);
  CHECK(r.value == doctest::Approx(oracle));
  CHECK(r.value == doctest::Approx(3.0));
  CHECK(certify_lp(p, r, 1e-9));
}

TEST_CASE("solve_lp: infeasible and unbounded") {
  LPProblem p;
  p.objective = Vector{0};
  p.constraints = DenseMatrix::from_rows({Vector{1}, Vector{1}}, 1);
  p.kinds = {RowKind::LessEqual, RowKind::GreaterEqual};
  p.rhs = Vector{-1, 1};
  p.free_variable = {true};
  CHECK(solve_lp(p).status == LpStatus::Infeasible);

  LPProblem q;
  q.objective = Vector{1, 0};
  q.sense = LpSense::Maximize;
  q.constraints = DenseMatrix::from_rows({Vector{1, -1}}, 2);
  q.kinds = {RowKind::LessEqual};
  q.rhs = Vector{1};
  const auto r = solve_lp(q);
  REQUIRE(r.status == LpStatus::Unbounded);
  REQUIRE(r.ray.size() == 2);
  CHECK(r.ray[0] > 0.0);
  CHECK(r.ray[0] - r.ray[1] <= 1e-12);
}

TEST_CASE("solve_lp: random feasible programs are certified") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int optimal = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 4, m = 3 + trial % 5;
    LPProblem p;
    p.objective = Vector(n);
    for (auto& c : p.objective) c = u(rng);
    p.sense = trial % 2 ? LpSense::Maximize : LpSense::Minimize;
    p.constraints = DenseMatrix(m + n, n);
    p.rhs = Vector(m + n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) p.constraints(i, j) = u(rng);
      p.rhs[i] = std::fabs(u(rng)) + 0.1;  // origin feasible
      p.kinds.push_back(RowKind::LessEqual);
    }
    for (std::size_t j = 0; j < n; ++j) {  // box keeps it bounded
      p.constraints(m + j, j) = 1.0;
      p.rhs[m + j] = 2.0;
      p.kinds.push_back(RowKind::LessEqual);
    }
    p.free_variable.assign(n, trial % 3 == 0);
    if (trial % 3 == 0) {
      p.constraints = DenseMatrix(m + 2 * n, n);
      p.rhs = Vector(m + 2 * n);
      p.kinds.clear();
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) p.constraints(i, j) = u(rng);
        p.rhs[i] = std::fabs(u(rng)) + 0.1;
        p.kinds.push_back(RowKind::LessEqual);
      }
      for (std::size_t j = 0; j < n; ++j) {
        p.constraints(m + 2 * j, j) = 1.0;
        p.rhs[m + 2 * j] = 2.0;
        p.constraints(m + 2 * j + 1, j) = 1.0;
        p.rhs[m + 2 * j + 1] = -2.0;
        p.kinds.push_back(RowKind::LessEqual);
        p.kinds.push_back(RowKind::GreaterEqual);
      }
    }
    const auto r = solve_lp(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(certify_lp(p, r, 1e-8));
    ++optimal;
  }
  CHECK(optimal == 100);
}

TEST_CASE("solve_nnls") {
  const auto i2 = DenseMatrix::identity(2);
  auto r = solve_nnls(i2, Vector{-1, 2});
  CHECK(max_abs_diff(r.coefficients, Vector{0, 2}) <= 1e-12);
  CHECK(r.residual_norm == doctest::Approx(1.0));

  r = solve_nnls(i2, Vector{3, 4});
  CHECK(max_abs_diff(r.coefficients, Vector{3, 4}) <= 1e-12);
  CHECK(r.residual_norm == doctest::Approx(0.0));

  // min_{c>=0} (c-1)^2 + (c+1)^2 is attained at c = 0.
  r = solve_nnls(DenseMatrix::from_columns({Vector{1, 1}}, 2), Vector{1, -1});
  CHECK(r.coefficients[0] == doctest::Approx(0.0));
  CHECK(r.residual_norm == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("solve_nnls satisfies KKT on random instances") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 2 + trial % 4, n = 1 + trial % 6;
    DenseMatrix a(m, n);
    auto vals = random_values(rng, m * n);
    std::copy(vals.begin(), vals.end(), a.data());
    const Vector b(random_values(rng, m));
    const auto r = solve_nnls(a, b);
    const Vector grad = a.apply_transpose(a.apply(r.coefficients) - b);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(r.coefficients[j] >= 0.0);
      CHECK(grad[j] >= -1e-9);
      CHECK(std::fabs(grad[j] * r.coefficients[j]) <= 1e-9);
    }
  }
}

TEST_CASE("jacobi_eigen") {
  const auto a = DenseMatrix::from_rows({Vector{0, 1}, Vector{1, 0}}, 2);
  const auto e = jacobi_eigen(a);
  CHECK(e.values[0] == doctest::Approx(-1.0));
  CHECK(e.values[1] == doctest::Approx(1.0));
  CHECK(std::fabs(e.vectors(0, 1)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(e.vectors(0, 1) == doctest::Approx(e.vectors(1, 1)));

  std::mt19937_64 rng(5);
  for (std::size_t n : {3u, 5u, 8u, 16u}) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = std::normal_distribution<double>()(rng);
    const auto ed = jacobi_eigen(m);
    // reconstruction V diag V^T
    const auto rec = spectral_apply(ed, [](double v) { return v; });
    CHECK(max_abs_diff(rec, m) <= 1e-10);
    CHECK(max_abs_diff(ed.vectors.transpose() * ed.vectors, DenseMatrix::identity(n)) <= 1e-10);
  }
}
