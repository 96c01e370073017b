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

#include "paota/powerctl/pla_mip.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "paota/core/errors.hpp"
#include "paota/powerctl/errors.hpp"
#include "paota/powerctl/lp.hpp"

namespace paota {

std::size_t PlaMip::num_convex() const {
  return static_cast<std::size_t>(std::count(convex.begin(), convex.end(), char{1}));
}

double PlaMip::gap_bound() const {
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const double w = (bounds.hi[ii] - bounds.lo[ii]) / static_cast<double>(segments);
    total += std::abs(objective.quad[ii]) * w * w / 4.0;
  }
  return total;
}

PlaMip build_pla_mip(const FractionalQP& fqp, const EigenTransform& transform, double lambda,
                     std::size_t segments) {
  PlaMip mip;
  mip.transform = transform;
  mip.objective = separable_objective(fqp, transform, lambda);
  mip.bounds = pla_bounds(transform.M);
  mip.z = pla_breakpoints(mip.bounds, segments);
  mip.segments = segments;
  mip.convex.resize(mip.z.size());
  for (std::size_t i = 0; i < mip.z.size(); ++i) {
    mip.convex[i] = mip.objective.quad[static_cast<Eigen::Index>(i)] > 0.0 ? 1 : 0;
  }
  return mip;
}

namespace {

constexpr double kIntegralTol = 1e-9;

// Column of gamma_ij for the dimensions kept in an LP.
struct GammaColumn {
  std::size_t dim;
  std::size_t breakpoint;
};

double gamma_cost(const PlaMip& mip, std::size_t i, std::size_t j) {
  const auto ii = static_cast<Eigen::Index>(i);
  const double z = mip.z[i][j];
  return mip.objective.quad[ii] * z * z + mip.objective.lin[ii] * z;
}

// Convexity rows and the box rows 0 <= M^{-1} z <= 1 over the given gamma
// columns, which occupy LP columns [0, gammas.size()).
void add_common_rows(const PlaMip& mip, const std::vector<GammaColumn>& gammas, LinearProgram& lp) {
  const std::size_t n = mip.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = lp.add_row(RowSense::kEqual, 1.0);
    for (std::size_t c = 0; c < gammas.size(); ++c) {
      if (gammas[c].dim == i) row[c] = 1.0;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> coef(lp.num_vars, 0.0);
    for (std::size_t c = 0; c < gammas.size(); ++c) {
      const auto& g = gammas[c];
      coef[c] =
          mip.transform.M_inv(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(g.dim)) *
          mip.z[g.dim][g.breakpoint];
    }
    lp.rows.push_back({coef, RowSense::kLessEqual, 1.0});
    lp.rows.push_back({std::move(coef), RowSense::kGreaterEqual, 0.0});
  }
}

PlaSolution decode(const PlaMip& mip, const std::vector<GammaColumn>& gammas, const LpResult& r) {
  const std::size_t n = mip.size();
  PlaSolution s;
  s.z = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t c = 0; c < gammas.size(); ++c) {
    s.z[static_cast<Eigen::Index>(gammas[c].dim)] +=
        r.x[c] * mip.z[gammas[c].dim][gammas[c].breakpoint];
  }
  s.beta = mip.transform.to_beta(s.z).cwiseMax(0.0).cwiseMin(1.0);
  s.value = r.value + mip.objective.constant;
  s.separable_value = mip.objective.at(s.z);
  return s;
}

// LP with every convex dimension pinned to one segment: only the two
// breakpoints of that segment carry weight. Enumeration and the final step
// of branch-and-bound both go through here.
struct CanonicalResult {
  bool feasible = false;
  PlaSolution solution;
};

CanonicalResult solve_assignment(const PlaMip& mip, const std::vector<int>& segment) {
  std::vector<GammaColumn> gammas;
  for (std::size_t i = 0; i < mip.size(); ++i) {
    if (mip.convex[i]) {
      const auto s = static_cast<std::size_t>(segment[i]);
      gammas.push_back({i, s});
      gammas.push_back({i, s + 1});
    } else {
      for (std::size_t j = 0; j <= mip.segments; ++j) gammas.push_back({i, j});
    }
  }
  LinearProgram lp;
  lp.num_vars = gammas.size();
  lp.objective.resize(gammas.size());
  for (std::size_t c = 0; c < gammas.size(); ++c) {
    lp.objective[c] = gamma_cost(mip, gammas[c].dim, gammas[c].breakpoint);
  }
  add_common_rows(mip, gammas, lp);
  const LpResult r = solve_lp(lp);
  CanonicalResult out;
  if (r.status == LpStatus::kIterationLimit) {
    throw NumericalError("pla_mip: simplex iteration limit", 0.0);
  }
  if (r.status != LpStatus::kOptimal) return out;
  out.feasible = true;
  out.solution = decode(mip, gammas, r);
  out.solution.segment = segment;
  return out;
}

PlaSolution enumerate(const PlaMip& mip) {
  std::vector<std::size_t> cvx;
  for (std::size_t i = 0; i < mip.size(); ++i) {
    if (mip.convex[i]) cvx.push_back(i);
  }
  std::vector<int> segment(mip.size(), -1);
  for (std::size_t i : cvx) segment[i] = 0;

  bool found = false;
  PlaSolution best;
  std::size_t count = 0;
  while (true) {
    CanonicalResult r = solve_assignment(mip, segment);
    ++count;
    if (r.feasible && (!found || r.solution.value > best.value)) {
      best = std::move(r.solution);
      found = true;
    }
    // Lexicographic odometer with the last convex dimension fastest.
    std::size_t pos = cvx.size();
    while (pos > 0) {
      const std::size_t i = cvx[pos - 1];
      if (static_cast<std::size_t>(++segment[i]) < mip.segments) break;
      segment[i] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
  if (!found) throw InfeasibleError("pla_mip: no feasible segment assignment");
  best.nodes = count;
  return best;
}

// Relaxation over all gamma columns plus the binaries of the convex
// dimensions; fixed binaries are substituted out.
class Relaxation {
 public:
  explicit Relaxation(const PlaMip& mip) : mip_(mip) {
    for (std::size_t i = 0; i < mip.size(); ++i) {
      for (std::size_t j = 0; j <= mip.segments; ++j) gammas_.push_back({i, j});
      if (mip.convex[i]) {
        for (std::size_t j = 0; j < mip.segments; ++j) binaries_.push_back({i, j});
      }
    }
  }

  std::size_t num_binaries() const { return binaries_.size(); }
  const GammaColumn& binary(std::size_t b) const { return binaries_[b]; }

  // fix[b] is -1 (free), 0 or 1. Returns the LP result with x laid out as
  // [gammas, free binaries]; `binary_values` receives every binary's value.
  LpResult solve(const std::vector<int>& fix, std::vector<double>& binary_values) const {
    std::vector<std::size_t> free_col(binaries_.size(), 0);
    std::size_t cols = gammas_.size();
    for (std::size_t b = 0; b < binaries_.size(); ++b) {
      if (fix[b] < 0) free_col[b] = cols++;
    }
    LinearProgram lp;
    lp.num_vars = cols;
    lp.objective.assign(cols, 0.0);
    for (std::size_t c = 0; c < gammas_.size(); ++c) {
      lp.objective[c] = gamma_cost(mip_, gammas_[c].dim, gammas_[c].breakpoint);
    }
    add_common_rows(mip_, gammas_, lp);

    auto binary_index = [&](std::size_t dim, std::size_t seg) {
      // Binaries of one dimension are contiguous.
      std::size_t b = 0;
      while (binaries_[b].dim != dim) ++b;
      return b + seg;
    };
    const std::size_t s = mip_.segments;
    for (std::size_t i = 0; i < mip_.size(); ++i) {
      if (!mip_.convex[i]) continue;
      const std::size_t first = binary_index(i, 0);
      // sum_j c_ij = 1
      {
        double rhs = 1.0;
        std::vector<double> coef(cols, 0.0);
        for (std::size_t j = 0; j < s; ++j) {
          const std::size_t b = first + j;
          if (fix[b] < 0) {
            coef[free_col[b]] = 1.0;
          } else {
            rhs -= fix[b];
          }
        }
        lp.rows.push_back({std::move(coef), RowSense::kEqual, rhs});
      }
      // gamma_ij - c_i,j-1 - c_ij <= 0
      for (std::size_t j = 0; j <= s; ++j) {
        double rhs = 0.0;
        std::vector<double> coef(cols, 0.0);
        coef[i * (s + 1) + j] = 1.0;
        for (std::size_t seg : {j - 1, j}) {
          if (seg >= s) continue;  // j - 1 wraps for j = 0
          const std::size_t b = first + seg;
          if (fix[b] < 0) {
            coef[free_col[b]] = -1.0;
          } else {
            rhs += fix[b];
          }
        }
        lp.rows.push_back({std::move(coef), RowSense::kLessEqual, rhs});
      }
    }
    LpResult r = solve_lp(lp);
    if (r.status == LpStatus::kIterationLimit) {
      throw NumericalError("pla_mip: simplex iteration limit", 0.0);
    }
    binary_values.assign(binaries_.size(), 0.0);
    if (r.status == LpStatus::kOptimal) {
      for (std::size_t b = 0; b < binaries_.size(); ++b) {
        binary_values[b] = fix[b] < 0 ? r.x[free_col[b]] : static_cast<double>(fix[b]);
      }
      r.value += mip_.objective.constant;
    }
    return r;
  }

 private:
  const PlaMip& mip_;
  std::vector<GammaColumn> gammas_;
  std::vector<GammaColumn> binaries_;
};

struct Node {
  double bound;
  std::size_t id;
  std::vector<int> fix;
  std::vector<double> binary_values;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;
  }
};

PlaSolution branch_and_bound(const PlaMip& mip, std::size_t max_nodes) {
  const Relaxation relax(mip);
  const std::size_t nb = relax.num_binaries();

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::size_t next_id = 0;
  std::size_t lp_solves = 0;
  auto push = [&](std::vector<int> fix) {
    std::vector<double> values;
    const LpResult r = relax.solve(fix, values);
    ++lp_solves;
    if (r.status != LpStatus::kOptimal) return;
    open.push({r.value, next_id++, std::move(fix), std::move(values)});
  };
  push(std::vector<int>(nb, -1));
  if (open.empty()) throw InfeasibleError("pla_mip: root relaxation infeasible");

  bool have_incumbent = false;
  PlaSolution incumbent;
  auto prune_below = [&]() { return incumbent.value - 1e-9 * (1.0 + std::abs(incumbent.value)); };

  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (have_incumbent && node.bound < prune_below()) continue;
    if (lp_solves > max_nodes) throw NumericalError("pla_mip: node limit exceeded", 0.0);

    std::size_t branch = nb;
    double best_frac = kIntegralTol;
    for (std::size_t b = 0; b < nb; ++b) {
      const double v = node.binary_values[b];
      const double frac = std::min(v, 1.0 - v);
      if (frac > best_frac + 1e-15) {
        best_frac = frac;
        branch = b;
      }
    }
    if (branch == nb) {
      std::vector<int> segment(mip.size(), -1);
      for (std::size_t b = 0; b < nb; ++b) {
        if (node.binary_values[b] > 0.5) {
          segment[relax.binary(b).dim] = static_cast<int>(relax.binary(b).breakpoint);
        }
      }
      CanonicalResult leaf = solve_assignment(mip, segment);
      if (leaf.feasible && (!have_incumbent || leaf.solution.value > incumbent.value)) {
        incumbent = std::move(leaf.solution);
        have_incumbent = true;
      }
      continue;
    }

    std::vector<int> down = node.fix;
    down[branch] = 0;
    push(std::move(down));
    std::vector<int> up = node.fix;
    const std::size_t dim = relax.binary(branch).dim;
    for (std::size_t b = 0; b < nb; ++b) {
      if (relax.binary(b).dim == dim) up[b] = 0;
    }
    up[branch] = 1;
    push(std::move(up));
  }
  if (!have_incumbent) throw InfeasibleError("pla_mip: every node infeasible");
  incumbent.nodes = lp_solves;
  return incumbent;
}

}  // namespace

PlaSolution pla_mip_solve(const PlaMip& mip, MipMethod method, std::size_t max_nodes) {
  if (mip.size() == 0) throw ConfigError("pla_mip_solve: empty problem");
  return method == MipMethod::kEnumerate ? enumerate(mip) : branch_and_bound(mip, max_nodes);
}

}  // namespace paota
