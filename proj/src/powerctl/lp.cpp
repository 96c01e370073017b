// Copyright 2026 The PAOTA Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "paota/powerctl/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "paota/core/errors.hpp"

namespace paota {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr std::size_t kDegenerateRun = 50;
constexpr std::size_t kIterationCap = 200000;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t i, std::size_t j) { return a_[i * (cols_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * (cols_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, cols_); }
  double rhs(std::size_t i) const { return at(i, cols_); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c, std::vector<double>& reduced) {
    double* pr = &a_[r * (cols_ + 1)];
    const double inv = 1.0 / pr[c];
    for (std::size_t j = 0; j <= cols_; ++j) pr[j] *= inv;
    pr[c] = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      double* pi = &a_[i * (cols_ + 1)];
      const double f = pi[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) pi[j] -= f * pr[j];
      pi[c] = 0.0;
      if (pi[cols_] < 0.0 && pi[cols_] > -1e-12) pi[cols_] = 0.0;
    }
    const double f = reduced[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j <= cols_; ++j) reduced[j] -= f * pr[j];
      reduced[c] = 0.0;
    }
    basis_[r] = c;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
};

enum class PhaseResult { kOptimal, kUnbounded, kIterationLimit };

// Maximises cost'x over the current basis. `reduced` has cols + 1 entries,
// the last holding -(objective value).
PhaseResult run_simplex(Tableau& t, const std::vector<double>& cost,
                        const std::vector<char>& allowed, std::size_t& iterations) {
  const std::size_t m = t.rows();
  const std::size_t w = t.cols();
  std::vector<double> reduced(w + 1, 0.0);
  for (std::size_t j = 0; j < w; ++j) reduced[j] = cost[j];
  for (std::size_t i = 0; i < m; ++i) {
    const double cb = cost[t.basis()[i]];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= w; ++j) reduced[j] -= cb * t.at(i, j);
  }
  double scale = 1.0;
  for (std::size_t j = 0; j < w; ++j) scale = std::max(scale, std::abs(cost[j]));
  const double tol = 1e-11 * scale;

  bool bland = false;
  std::size_t degenerate = 0;
  while (true) {
    if (++iterations > kIterationCap) return PhaseResult::kIterationLimit;
    std::size_t enter = w;
    double best = tol;
    for (std::size_t j = 0; j < w; ++j) {
      if (!allowed[j] || reduced[j] <= tol) continue;
      if (bland) {
        enter = j;
        break;
      }
      if (reduced[j] > best) {
        best = reduced[j];
        enter = j;
      }
    }
    if (enter == w) return PhaseResult::kOptimal;

    std::size_t leave = m;
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double a = t.at(i, enter);
      if (a <= kPivotTol) continue;
      const double r = std::max(t.rhs(i), 0.0) / a;
      const double slack = 1e-12 * (1.0 + (leave == m ? r : ratio));
      if (leave == m || r < ratio - slack) {
        ratio = r;
        leave = i;
      } else if (r <= ratio + slack && t.basis()[i] < t.basis()[leave]) {
        ratio = std::min(ratio, r);
        leave = i;
      }
    }
    if (leave == m) return PhaseResult::kUnbounded;
    if (ratio <= 1e-14) {
      if (++degenerate >= kDegenerateRun) bland = true;
    } else {
      degenerate = 0;
    }
    t.pivot(leave, enter, reduced);
  }
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.rows.size();
  if (lp.objective.size() != n) throw ConfigError("solve_lp: objective size mismatch");

  // Normalise to non-negative right-hand sides.
  std::vector<LpRow> rows = lp.rows;
  std::size_t n_slack = 0;
  std::size_t n_art = 0;
  for (LpRow& row : rows) {
    if (row.coef.size() != n) throw ConfigError("solve_lp: row size mismatch");
    if (row.rhs < 0.0) {
      for (double& v : row.coef) v = -v;
      row.rhs = -row.rhs;
      if (row.sense == RowSense::kLessEqual) {
        row.sense = RowSense::kGreaterEqual;
      } else if (row.sense == RowSense::kGreaterEqual) {
        row.sense = RowSense::kLessEqual;
      }
    }
    if (row.sense != RowSense::kEqual) ++n_slack;
    if (row.sense != RowSense::kLessEqual) ++n_art;
  }

  const std::size_t width = n + n_slack + n_art;
  const std::size_t art_begin = n + n_slack;
  Tableau t(m, width);
  std::size_t next_slack = n;
  std::size_t next_art = art_begin;
  for (std::size_t i = 0; i < m; ++i) {
    const LpRow& row = rows[i];
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = row.coef[j];
    t.rhs(i) = row.rhs;
    switch (row.sense) {
      case RowSense::kLessEqual:
        t.at(i, next_slack) = 1.0;
        t.basis()[i] = next_slack++;
        break;
      case RowSense::kGreaterEqual:
        t.at(i, next_slack++) = -1.0;
        t.at(i, next_art) = 1.0;
        t.basis()[i] = next_art++;
        break;
      case RowSense::kEqual:
        t.at(i, next_art) = 1.0;
        t.basis()[i] = next_art++;
        break;
    }
  }

  LpResult result;
  std::vector<char> allowed(width, 1);
  if (n_art > 0) {
    std::vector<double> phase1(width, 0.0);
    for (std::size_t j = art_begin; j < width; ++j) phase1[j] = -1.0;
    const PhaseResult r1 = run_simplex(t, phase1, allowed, result.iterations);
    if (r1 == PhaseResult::kIterationLimit) {
      result.status = LpStatus::kIterationLimit;
      return result;
    }
    double infeasibility = 0.0;
    double rhs_scale = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      rhs_scale = std::max(rhs_scale, std::abs(rows[i].rhs));
      if (t.basis()[i] >= art_begin) infeasibility += std::max(t.rhs(i), 0.0);
    }
    if (infeasibility > 1e-9 * rhs_scale) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    // Pivot remaining (zero-level) artificials out of the basis; rows where
    // that is impossible are redundant and stay inert.
    std::vector<double> dummy(width + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis()[i] < art_begin) continue;
      std::size_t best = art_begin;
      double mag = 1e-9;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (std::abs(t.at(i, j)) > mag) {
          mag = std::abs(t.at(i, j));
          best = j;
        }
      }
      if (best < art_begin) t.pivot(i, best, dummy);
    }
    for (std::size_t j = art_begin; j < width; ++j) allowed[j] = 0;
  }

  std::vector<double> cost(width, 0.0);
  std::copy(lp.objective.begin(), lp.objective.end(), cost.begin());
  const PhaseResult r2 = run_simplex(t, cost, allowed, result.iterations);
  if (r2 == PhaseResult::kUnbounded) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  if (r2 == PhaseResult::kIterationLimit) {
    result.status = LpStatus::kIterationLimit;
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis()[i] < n) result.x[t.basis()[i]] = std::max(t.rhs(i), 0.0);
  }
  result.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) result.value += lp.objective[j] * result.x[j];
  return result;
}

}  // namespace paota
