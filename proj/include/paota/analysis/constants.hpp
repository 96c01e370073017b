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

// Empirical estimates of the assumption constants on a concrete problem.
// Every constant is a maximum over probes, so estimates are conservative
// in the sense of the uniform bounds they stand for.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "paota/analysis/theory.hpp"
#include "paota/core/dataset.hpp"
#include "paota/core/model.hpp"
#include "paota/core/param_vector.hpp"
#include "paota/core/trainer.hpp"

namespace paota {

struct EstimationProblem {
  const Model* model = nullptr;
  std::vector<DataShard> shards;  // global objective is their D_k-weighted mean
  ParamVector center;             // probes are drawn around this point
  double radius = 1.0;            // per-probe perturbation norm
  TrainerConfig trainer;          // eta, M and batch size of local jobs
  std::size_t trajectory_rounds = 10;
  std::size_t max_staleness = 3;
  std::size_t power_iterations = 30;
  std::size_t variance_batches = 8;
  double noise_var = 0.0;
};

struct ConstantEstimate {
  TheoryConstants constants;
  std::size_t smoothness_pairs = 0;
  std::size_t heterogeneity_samples = 0;
  std::size_t variance_samples = 0;
  std::size_t drift_samples = 0;
};

/// L: max ||grad F(x) - grad F(y)|| / ||x - y|| over random pairs and over
/// finite-difference power-iteration pairs at the centre.
/// zeta: max_k ||grad F_k(x) - grad F(x)||^2 at the probe points.
/// sigma^2: max over points and clients of the mean squared deviation of
/// mini-batch gradients from the full shard gradient.
/// delta, eps, vartheta: maxima over windows n <= max_staleness of a
/// D_k-weighted local-SGD trajectory of global models (vartheta >= 1, n = 0).
/// Requires probes >= 100.
ConstantEstimate estimate_constants(const EstimationProblem& problem, std::size_t probes,
                                    std::uint64_t seed);

}  // namespace paota
