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

#include "paota/scheduler/engine.hpp"

#include <cmath>

#include "paota/airchannel/channel.hpp"
#include "paota/core/errors.hpp"
#include "paota/core/random.hpp"
#include "paota/powerctl/dinkelbach.hpp"
#include "paota/powerctl/factors.hpp"
#include "paota/powerctl/fqp.hpp"

namespace paota {

double sample_latency(std::size_t client, std::size_t round, std::uint64_t seed) {
  Rng rng(derive_seed(seed, Stream::kLatency, {client, round}));
  return rng.uniform(kLatencyMin, kLatencyMax);
}

std::vector<ClientRuntime> make_clients(std::size_t K) {
  std::vector<ClientRuntime> clients(K);
  for (std::size_t k = 0; k < K; ++k) clients[k].id = k;
  return clients;
}

RoundRecord advance_round(GlobalState& state, std::vector<ClientRuntime>& clients,
                          const RoundConfig& cfg, const RoundHooks& hooks) {
  if (!hooks.train) throw ConfigError("advance_round: no training hook");
  if (clients.size() != cfg.K || cfg.p_max.size() != cfg.K) {
    throw ConfigError("advance_round: client count does not match configuration");
  }
  if (!(state.delta_t > 0.0)) throw ConfigError("advance_round: delta_t must be positive");
  const std::size_t r = state.round;
  const double start = static_cast<double>(r - 1) * state.delta_t;
  const double end = static_cast<double>(r) * state.delta_t;
  const std::size_t dim = state.w_g.size();

  RoundRecord rec;
  rec.r = r;
  rec.clock = end;
  rec.noise_var = cfg.noise_var;
  rec.channel_seed = cfg.channel_seed;
  rec.noise_seed = derive_seed(cfg.noise_seed, Stream::kNoise, {r});

  // Broadcast and start local jobs.
  for (ClientRuntime& c : clients) {
    if (!c.idle()) continue;
    c.pending = hooks.train(c.id, state.w_g, r);
    c.b = 0;
    c.base_round = r;
    const double latency =
        hooks.latency ? hooks.latency(c.id, r) : sample_latency(c.id, r, cfg.latency_seed);
    c.busy_until = start + latency;
    rec.broadcast.push_back(c.id);
  }

  // Jobs finished by the end of the period become ready to upload.
  std::vector<std::size_t> staged;
  for (ClientRuntime& c : clients) {
    if (!c.pending || c.busy_until > end) continue;
    c.b = 1;
    c.s = r - c.base_round;
    staged.push_back(c.id);
  }

  const ChannelDraw draw = draw_channels(cfg.K, cfg.channel_seed, r, cfg.noise_var);
  std::vector<std::size_t> active;
  for (std::size_t k : staged) {
    if (std::abs(draw.h[k]) < kDeepFadeGuard) {
      rec.deferred.push_back(k);
    } else {
      active.push_back(k);
    }
  }

  state.round = r + 1;
  state.clock = end;
  if (active.empty()) {
    rec.empty_round = true;
    state.w_prev = state.w_g;
    return rec;
  }

  if (state.w_prev.size() != dim) state.w_prev = state.w_g;
  const ParamVector global_move = state.w_g - state.w_prev;
  const std::size_t n = active.size();
  std::vector<double> rho(n), theta(n), pmax(n), beta(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const ClientRuntime& c = clients[active[i]];
    rho[i] = staleness_factor(static_cast<double>(c.s), cfg.omega);
    theta[i] = interference_factor(c.pending->delta, global_move);
    pmax[i] = cfg.p_max[c.id];
  }

  std::vector<double> p(cfg.K, 0.0);
  std::vector<int> b(cfg.K, 0);
  if (cfg.power == PowerMode::kOptimized) {
    const std::vector<int> ones(n, 1);
    FqpInputs in{rho, theta, pmax, ones};
    in.L = cfg.L;
    in.eps = cfg.eps;
    in.K_active = static_cast<double>(n);
    in.d = static_cast<double>(dim);
    in.noise_var = cfg.noise_var;
    const FractionalQP fqp = assemble_fqp(in);
    PlaConfig pla;
    pla.segments = cfg.pla_segments;
    Eigen::VectorXd best;
    try {
      DinkelbachResult res = dinkelbach_solve(fqp, cfg.dinkelbach_tol, pla);
      best = res.beta;
      rec.solver_iterations = res.trace.iterates.size();
      if (hooks.on_problem) hooks.on_problem(rec.r, fqp, &res);
    } catch (const NonConvergenceError& e) {
      // Keep the best iterate found; lambda is nondecreasing so the last
      // accepted beta is the incumbent.
      best = e.trace().iterates.back().beta;
      rec.solver_iterations = e.trace().iterates.size();
      rec.solver_converged = false;
      if (hooks.on_problem) hooks.on_problem(rec.r, fqp, nullptr);
    }
    for (std::size_t i = 0; i < n; ++i) beta[i] = best[static_cast<Eigen::Index>(i)];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = active[i];
    b[k] = 1;
    p[k] = cfg.power == PowerMode::kOptimized ? power_from_beta(beta[i], rho[i], theta[i], pmax[i])
                                              : pmax[i];
  }

  const TransmitPlan plan = make_plan(b, p, draw);
  std::vector<const ParamVector*> locals(cfg.K, nullptr);
  for (std::size_t k : active) locals[k] = &clients[k].pending->w_local;
  const ParamVector y = aircomp_aggregate(plan, locals, draw, rec.noise_seed, dim);
  Normalized next = normalize(y, b, p);

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = active[i];
    ParticipantRecord pr;
    pr.id = k;
    pr.staleness = clients[k].s;
    pr.rho = rho[i];
    pr.theta = theta[i];
    pr.beta = beta[i];
    pr.p = p[k];
    pr.alpha = next.alpha[k];
    pr.h = draw.h[k];
    pr.tx_energy = transmit_energy(plan.phi[k], clients[k].pending->w_local);
    rec.sum_alpha_sq += pr.alpha * pr.alpha;
    rec.participants.push_back(pr);
    clients[k].pending.reset();
  }
  rec.power_sum = plan.power_sum();
  state.w_prev = std::move(state.w_g);
  state.w_g = std::move(next.w);
  return rec;
}

}  // namespace paota
