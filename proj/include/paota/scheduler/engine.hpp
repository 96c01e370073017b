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

#pragma once

// Time-triggered semi-asynchronous aggregation on a virtual clock.
//
// Round r spans [(r-1) dT, r dT]. At its start the server broadcasts the
// global model to every idle client (all clients in round 1), which start a
// local job lasting one latency draw. At its end every client whose job has
// finished uploads over the air, weighted by the power controller, and the
// normalised superposition becomes the next global model.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "paota/core/param_vector.hpp"
#include "paota/core/trainer.hpp"
#include "paota/powerctl/dinkelbach.hpp"
#include "paota/powerctl/fqp.hpp"

namespace paota {

inline constexpr double kLatencyMin = 5.0;
inline constexpr double kLatencyMax = 15.0;

/// Duration of one complete local job, U(5, 15) s, fixed per (client, round, seed).
double sample_latency(std::size_t client, std::size_t round, std::uint64_t seed);

struct ClientRuntime {
  std::size_t id = 0;
  int b = 1;                   // ready flag
  std::size_t s = 0;           // staleness of the last staged upload
  std::size_t base_round = 0;  // round whose global model seeded the current job
  double busy_until = 0.0;
  std::optional<LocalResult> pending;

  // Idle and not holding an upload: eligible for the next broadcast.
  bool idle() const { return b == 1 && !pending.has_value(); }
};

struct GlobalState {
  ParamVector w_g;
  ParamVector w_prev;     // w_g of the previous round (equal to w_g in round 1)
  std::size_t round = 1;  // next round to run
  double clock = 0.0;     // (round - 1) * delta_t
  double delta_t = 8.0;
};

enum class PowerMode {
  kOptimized,  // Dinkelbach + piecewise-linear MIP per round
  kMaxPower,   // p_k = p_max_k (uniform weighting when p_max is uniform)
};

struct RoundConfig {
  std::size_t K = 10;
  double omega = 3.0;
  std::vector<double> p_max;  // per client, W
  double L = 10.0;
  double eps = 1.0;
  double noise_var = 0.0;  // sigma_n^2, W
  std::size_t pla_segments = 32;
  double dinkelbach_tol = 1e-6;
  PowerMode power = PowerMode::kOptimized;
  std::uint64_t channel_seed = 0;
  std::uint64_t noise_seed = 0;
  std::uint64_t latency_seed = 0;
};

struct RoundHooks {
  // Runs one local job of `client` from `w_start`, seeded by its round.
  std::function<LocalResult(std::size_t client, const ParamVector& w_start, std::size_t round)>
      train;
  // Optional latency override; defaults to sample_latency with the config seed.
  std::function<double(std::size_t client, std::size_t round)> latency;
  // Optional sink for each round's power-control problem and solution.
  std::function<void(std::size_t round, const FractionalQP&, const DinkelbachResult*)> on_problem;
};

struct ParticipantRecord {
  std::size_t id = 0;
  std::size_t staleness = 0;
  double rho = 0.0;
  double theta = 0.0;
  double beta = 0.0;
  double p = 0.0;
  double alpha = 0.0;
  std::complex<double> h;
  double tx_energy = 0.0;  // |phi|^2 ||w_k||^2
};

struct RoundRecord {
  std::size_t r = 0;
  double clock = 0.0;  // virtual time at the end of the round
  std::vector<std::size_t> broadcast;
  std::vector<ParticipantRecord> participants;
  std::vector<std::size_t> deferred;  // finished but in a deep fade
  bool empty_round = false;
  double power_sum = 0.0;  // sum_k b_k p_k
  double sum_alpha_sq = 0.0;
  double noise_var = 0.0;
  std::size_t solver_iterations = 0;
  bool solver_converged = true;
  std::uint64_t channel_seed = 0;
  std::uint64_t noise_seed = 0;

  // Filled in by the experiment harness.
  double train_loss = 0.0;
  double test_acc = 0.0;
  double g_term_d = 0.0;
  double g_term_e = 0.0;
};

std::vector<ClientRuntime> make_clients(std::size_t K);

/// Runs round state.round and installs the next global model.
RoundRecord advance_round(GlobalState& state, std::vector<ClientRuntime>& clients,
                          const RoundConfig& cfg, const RoundHooks& hooks);

}  // namespace paota
