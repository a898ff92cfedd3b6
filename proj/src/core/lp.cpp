#include "ovs/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ovs/errors.hpp"

namespace ovs {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

void LPProblem::validate() const {
  const std::size_t n = objective.size();
  if (constraints.rows() != rhs.size() || kinds.size() != rhs.size())
    throw DimensionError("LP: row count mismatch between constraints, kinds and rhs");
  if (rhs.size() > 0 && constraints.cols() != n)
    throw DimensionError("LP: constraint matrix has wrong column count");
  if (!free_variable.empty() && free_variable.size() != n)
    throw DimensionError("LP: free_variable flags have wrong length");
  objective.require_finite("LP objective");
  rhs.require_finite("LP rhs");
  for (std::size_t i = 0; i < constraints.rows() * constraints.cols(); ++i)
    if (!std::isfinite(constraints.data()[i])) throw std::invalid_argument("LP constraints: non-finite entry");
}

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-11;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_(rows, cols + 1), obj_(cols + 1, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return t_(r, c); }
  double at(std::size_t r, std::size_t c) const { return t_(r, c); }
  double& rhs(std::size_t r) { return t_(r, n_); }
  std::vector<double>& obj() { return obj_; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / t_(r, c);
    for (std::size_t k = 0; k <= n_; ++k) t_(r, k) *= inv;
    t_(r, c) = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f == 0.0) continue;
      for (std::size_t k = 0; k <= n_; ++k) t_(i, k) -= f * t_(r, k);
      t_(i, c) = 0.0;
    }
    const double f = obj_[c];
    if (f != 0.0) {
      for (std::size_t k = 0; k <= n_; ++k) obj_[k] -= f * t_(r, k);
      obj_[c] = 0.0;
    }
    basis_[r] = c;
  }

  /// Set the objective row from column costs (reduced with respect to the current basis).
  void set_costs(const std::vector<double>& cost) {
    std::fill(obj_.begin(), obj_.end(), 0.0);
    for (std::size_t j = 0; j < n_; ++j) obj_[j] = cost[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t k = 0; k <= n_; ++k) obj_[k] -= cb * t_(i, k);
    }
  }

  enum class Outcome { Optimal, Unbounded, IterationLimit };

  /// Minimizes the current objective row; columns with allowed[j] == false never enter.
  Outcome run(const std::vector<bool>& allowed, int max_iter, int& iterations, std::size_t& unbounded_col) {
    while (true) {
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_; ++j)
        if (allowed[j] && obj_[j] < -kCostEps) {
          enter = j;
          break;
        }
      if (enter == n_) return Outcome::Optimal;
      if (iterations >= max_iter) return Outcome::IterationLimit;

      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotEps) continue;
        const double ratio = t_(i, n_) / a;
        const bool tie = leave < m_ && std::fabs(ratio - best) <= 1e-14 * std::max(1.0, std::fabs(best));
        if (leave == m_ || (!tie && ratio < best) || (tie && basis_[i] < basis_[leave])) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave == m_) {
        unbounded_col = enter;
        return Outcome::Unbounded;
      }
      pivot(leave, enter);
      ++iterations;
    }
  }

 private:
  std::size_t m_, n_;
  DenseMatrix t_;
  std::vector<double> obj_;
  std::vector<std::size_t> basis_ = std::vector<std::size_t>(m_, 0);
};

}  // namespace

LPResult solve_lp(const LPProblem& problem, const TolerancePolicy& tol) {
  problem.validate();
  const std::size_t n = problem.num_variables();
  const std::size_t m = problem.num_rows();
  const double sigma = problem.sense == LpSense::Minimize ? 1.0 : -1.0;
  auto is_free = [&](std::size_t j) { return !problem.free_variable.empty() && problem.free_variable[j]; };

  // Column layout: structural (free variables split into +/-), slack/surplus, artificial.
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = ncols++;
    if (is_free(j)) neg_col[j] = ncols++;
  }

  std::vector<double> row_sign(m, 1.0);
  std::vector<RowKind> kind(problem.kinds);
  for (std::size_t i = 0; i < m; ++i) {
    if (problem.rhs[i] < 0.0) {
      row_sign[i] = -1.0;
      if (kind[i] == RowKind::LessEqual) kind[i] = RowKind::GreaterEqual;
      else if (kind[i] == RowKind::GreaterEqual) kind[i] = RowKind::LessEqual;
    }
  }
  std::vector<std::size_t> slack_col(m, SIZE_MAX), art_col(m, SIZE_MAX), id_col(m);
  for (std::size_t i = 0; i < m; ++i)
    if (kind[i] != RowKind::Equal) slack_col[i] = ncols++;
  const std::size_t first_art = ncols;
  for (std::size_t i = 0; i < m; ++i)
    if (kind[i] != RowKind::LessEqual) art_col[i] = ncols++;

  Tableau tab(m, ncols);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = row_sign[i] * problem.constraints(i, j);
      tab.at(i, pos_col[j]) = a;
      if (neg_col[j] != SIZE_MAX) tab.at(i, neg_col[j]) = -a;
    }
    tab.rhs(i) = row_sign[i] * problem.rhs[i];
    if (kind[i] == RowKind::LessEqual) {
      tab.at(i, slack_col[i]) = 1.0;
      tab.basis()[i] = slack_col[i];
      id_col[i] = slack_col[i];
    } else {
      if (kind[i] == RowKind::GreaterEqual) tab.at(i, slack_col[i]) = -1.0;
      tab.at(i, art_col[i]) = 1.0;
      tab.basis()[i] = art_col[i];
      id_col[i] = art_col[i];
    }
  }

  LPResult result;
  int iterations = 0;
  std::size_t unbounded_col = 0;

  // Phase 1.
  if (first_art < ncols) {
    std::vector<double> cost(ncols, 0.0);
    for (std::size_t j = first_art; j < ncols; ++j) cost[j] = 1.0;
    tab.set_costs(cost);
    std::vector<bool> allowed(ncols, true);
    const auto outcome = tab.run(allowed, tol.max_iter, iterations, unbounded_col);
    result.iterations = iterations;
    if (outcome == Tableau::Outcome::IterationLimit) {
      result.status = LpStatus::IterationLimit;
      return result;
    }
    const double infeasibility = -tab.obj()[ncols];
    double scale = 1.0;
    for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::fabs(problem.rhs[i]));
    if (infeasibility > tol.abs_tol * scale) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Drive zero-level artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis()[i] < first_art) continue;
      for (std::size_t j = 0; j < first_art; ++j)
        if (std::fabs(tab.at(i, j)) > 1e-9) {
          tab.pivot(i, j);
          break;
        }
    }
  }

  // Phase 2.
  std::vector<double> cost(ncols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    cost[pos_col[j]] = sigma * problem.objective[j];
    if (neg_col[j] != SIZE_MAX) cost[neg_col[j]] = -sigma * problem.objective[j];
  }
  tab.set_costs(cost);
  std::vector<bool> allowed(ncols, true);
  for (std::size_t j = first_art; j < ncols; ++j) allowed[j] = false;
  const auto outcome = tab.run(allowed, tol.max_iter, iterations, unbounded_col);
  result.iterations = iterations;
  if (outcome == Tableau::Outcome::IterationLimit) {
    result.status = LpStatus::IterationLimit;
    return result;
  }

  std::vector<double> values(ncols, 0.0);
  for (std::size_t i = 0; i < m; ++i) values[tab.basis()[i]] = tab.rhs(i);
  auto to_original = [&](const std::vector<double>& v) {
    Vector x(n);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = v[pos_col[j]];
      if (neg_col[j] != SIZE_MAX) x[j] -= v[neg_col[j]];
    }
    return x;
  };

  if (outcome == Tableau::Outcome::Unbounded) {
    std::vector<double> dir(ncols, 0.0);
    dir[unbounded_col] = 1.0;
    for (std::size_t i = 0; i < m; ++i) dir[tab.basis()[i]] = -tab.at(i, unbounded_col);
    result.status = LpStatus::Unbounded;
    result.solution = to_original(values);
    result.ray = to_original(dir);
    return result;
  }

  result.status = LpStatus::Optimal;
  result.solution = to_original(values);
  result.value = dot(problem.objective, result.solution);
  result.dual = Vector(m);
  for (std::size_t i = 0; i < m; ++i) {
    // Identity columns carry B^{-1}; their reduced cost is c_col - y_i with c_col = 0.
    const double y_normalized = -tab.obj()[id_col[i]];
    result.dual[i] = sigma * row_sign[i] * y_normalized;
  }
  return result;
}

bool certify_lp(const LPProblem& p, const LPResult& r, double tol) {
  if (r.status != LpStatus::Optimal) return false;
  const std::size_t n = p.num_variables();
  const std::size_t m = p.num_rows();
  const double sigma = p.sense == LpSense::Minimize ? 1.0 : -1.0;
  auto is_free = [&](std::size_t j) { return !p.free_variable.empty() && p.free_variable[j]; };

  for (std::size_t j = 0; j < n; ++j)
    if (!is_free(j) && r.solution[j] < -tol) return false;
  for (std::size_t i = 0; i < m; ++i) {
    const double ax = dot(p.constraints.row(i), r.solution);
    const double slack = tol * (1.0 + std::fabs(p.rhs[i]));
    switch (p.kinds[i]) {
      case RowKind::LessEqual:
        if (ax > p.rhs[i] + slack) return false;
        break;
      case RowKind::GreaterEqual:
        if (ax < p.rhs[i] - slack) return false;
        break;
      case RowKind::Equal:
        if (std::fabs(ax - p.rhs[i]) > slack) return false;
        break;
    }
  }
  // Dual of min sigma*c^T x: y' = sigma * y.
  Vector yp = sigma * r.dual;
  for (std::size_t i = 0; i < m; ++i) {
    if (p.kinds[i] == RowKind::LessEqual && yp[i] > tol) return false;
    if (p.kinds[i] == RowKind::GreaterEqual && yp[i] < -tol) return false;
  }
  Vector reduced = sigma * p.objective;
  if (m > 0) reduced -= p.constraints.apply_transpose(yp);
  for (std::size_t j = 0; j < n; ++j) {
    if (is_free(j) ? std::fabs(reduced[j]) > tol : reduced[j] < -tol) return false;
  }
  const double primal = sigma * dot(p.objective, r.solution);
  const double dual_value = dot(p.rhs, yp);
  return std::fabs(primal - dual_value) <= tol * (1.0 + std::fabs(primal));
}

}  // namespace ovs
