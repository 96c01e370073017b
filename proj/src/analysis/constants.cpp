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

#include "paota/analysis/constants.hpp"

#include <algorithm>
#include <cmath>

#include "paota/core/errors.hpp"
#include "paota/core/random.hpp"

namespace paota {

namespace {

class GlobalObjective {
 public:
  explicit GlobalObjective(const EstimationProblem& p) : p_(p) {
    for (const DataShard& s : p.shards) total_ += static_cast<double>(s.size());
  }

  ParamVector shard_gradient(std::size_t k, const ParamVector& w) const {
    ParamVector g(w.size());
    const DataShard& s = p_.shards[k];
    p_.model->loss_and_gradient(w.span(), *s.source, s.indices, g.span());
    return g;
  }

  ParamVector gradient(const ParamVector& w) const {
    ParamVector g(w.size());
    for (std::size_t k = 0; k < p_.shards.size(); ++k) {
      g.add_scaled(static_cast<double>(p_.shards[k].size()) / total_, shard_gradient(k, w));
    }
    return g;
  }

  double weight(std::size_t k) const { return static_cast<double>(p_.shards[k].size()) / total_; }

 private:
  const EstimationProblem& p_;
  double total_ = 0.0;
};

ParamVector random_direction(Rng& rng, std::size_t d) {
  ParamVector u(d);
  for (std::size_t i = 0; i < d; ++i) u[i] = rng.normal();
  const double n = u.norm();
  kernels::scale(1.0 / n, u.span());
  return u;
}

}  // namespace

ConstantEstimate estimate_constants(const EstimationProblem& problem, std::size_t probes,
                                    std::uint64_t seed) {
  if (problem.model == nullptr || problem.shards.empty()) {
    throw ConfigError("estimate_constants: model and shards required");
  }
  if (probes < 100) throw ConfigError("estimate_constants: need at least 100 probes");
  const std::size_t d = problem.model->dimension();
  if (problem.center.size() != d) throw ConfigError("estimate_constants: centre dimension");
  problem.trainer.validate();

  const GlobalObjective F(problem);
  Rng rng(derive_seed(seed, Stream::kProbe));
  ConstantEstimate est;
  TheoryConstants& c = est.constants;
  c.L = 0.0;
  c.zeta = 0.0;
  c.sigma2 = 0.0;
  c.delta = 0.0;
  c.eps = 0.0;
  c.vartheta = 1.0;
  c.eta = problem.trainer.learning_rate;
  c.M = static_cast<double>(problem.trainer.local_rounds);
  c.K = static_cast<double>(problem.shards.size());
  c.d = static_cast<double>(d);
  c.noise_var = problem.noise_var;

  // Smoothness from random pairs.
  const std::size_t variance_points = std::min<std::size_t>(probes, 20);
  for (std::size_t i = 0; i < probes; ++i) {
    ParamVector x = problem.center;
    x.add_scaled(problem.radius * rng.uniform(), random_direction(rng, d));
    ParamVector y = x;
    y.add_scaled(0.1 * problem.radius, random_direction(rng, d));
    const ParamVector gx = F.gradient(x);
    const double ratio = (gx - F.gradient(y)).norm() / (x - y).norm();
    c.L = std::max(c.L, ratio);
    ++est.smoothness_pairs;

    // Heterogeneity at the same point.
    for (std::size_t k = 0; k < problem.shards.size(); ++k) {
      const ParamVector gk = F.shard_gradient(k, x);
      c.zeta = std::max(c.zeta, (gk - gx).squared_norm());
      ++est.heterogeneity_samples;

      if (i >= variance_points) continue;
      const DataShard& s = problem.shards[k];
      if (problem.trainer.batch_size >= s.size()) {
        ++est.variance_samples;
        continue;  // full batch: no sampling noise
      }
      double acc = 0.0;
      for (std::size_t b = 0; b < problem.variance_batches; ++b) {
        std::vector<std::size_t> batch;
        for (std::size_t pick :
             rng.sample_without_replacement(s.size(), problem.trainer.batch_size)) {
          batch.push_back(s.indices[pick]);
        }
        std::sort(batch.begin(), batch.end());
        ParamVector g(d);
        problem.model->loss_and_gradient(x.span(), *s.source, batch, g.span());
        acc += (g - gk).squared_norm();
      }
      c.sigma2 = std::max(c.sigma2, acc / static_cast<double>(problem.variance_batches));
      ++est.variance_samples;
    }
  }

  // Smoothness along the dominant curvature direction at the centre.
  {
    const double h = 1e-3 * std::max(problem.radius, 1e-6);
    const ParamVector g0 = F.gradient(problem.center);
    ParamVector u = random_direction(rng, d);
    for (std::size_t it = 0; it < problem.power_iterations; ++it) {
      ParamVector x = problem.center;
      x.add_scaled(h, u);
      ParamVector diff = F.gradient(x) - g0;
      const double n = diff.norm();
      c.L = std::max(c.L, n / h);
      ++est.smoothness_pairs;
      if (!(n > 0.0)) break;
      kernels::scale(1.0 / n, diff.span());
      u = std::move(diff);
    }
  }

  // Drift constants along a local-SGD trajectory of global models.
  std::vector<ParamVector> traj{problem.center};
  std::vector<ParamVector> grads{F.gradient(problem.center)};
  for (std::size_t r = 1; r <= problem.trajectory_rounds; ++r) {
    ParamVector next(d);
    for (std::size_t k = 0; k < problem.shards.size(); ++k) {
      TrainerConfig cfg = problem.trainer;
      cfg.seed = derive_seed(seed, Stream::kTraining, {k, r});
      next.add_scaled(F.weight(k),
                      local_train(*problem.model, traj.back(), problem.shards[k], cfg).w_local);
    }
    traj.push_back(std::move(next));
    grads.push_back(F.gradient(traj.back()));
    const std::size_t now = traj.size() - 1;
    const double g_sq = grads[now].squared_norm();
    for (std::size_t n = 1; n <= problem.max_staleness && n <= now; ++n) {
      const ParamVector back = traj[now - n] - traj[now];
      if (g_sq > 0.0) {
        c.delta = std::max(c.delta, kernels::dot(back.span(), grads[now].span()) / g_sq);
        c.vartheta = std::max(c.vartheta, std::sqrt(grads[now - n].squared_norm() / g_sq));
      }
      c.eps = std::max(c.eps, back.norm());
      ++est.drift_samples;
    }
  }
  return est;
}

}  // namespace paota
