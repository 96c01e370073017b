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

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "paota/bench/config.hpp"
#include "paota/core/dataset.hpp"
#include "paota/core/model.hpp"
#include "paota/scheduler/engine.hpp"

namespace paota {

struct ExperimentData {
  std::shared_ptr<const Dataset> train;
  std::shared_ptr<const Dataset> test;
  std::vector<DataShard> shards;
};

/// Loads (or synthesises) the data and partitions it across clients.
/// MNIST features are standardised with the training-set statistics.
ExperimentData prepare_data(const ExperimentConfig& cfg);

/// feature_dim -> 10 -> 10 -> num_classes; 784-10-10-10 on MNIST.
Mlp model_for(const ExperimentData& data);

struct RunOptions {
  // Overrides the U(5, 15) latency model (client, round) -> seconds.
  std::function<double(std::size_t, std::size_t)> latency;
  // Called after each round with the completed record.
  std::function<void(const RoundRecord&)> on_round;
  // PAOTA only: receives each round's power-control problem.
  std::function<void(std::size_t, const FractionalQP&, const DinkelbachResult*)> on_problem;
};

struct RunResult {
  Algorithm algorithm = Algorithm::kPaota;
  std::vector<RoundRecord> records;
  ParamVector final_model;
  std::size_t participants_per_round = 0;  // synchronous baselines only
  bool diverged = false;
  std::string error;
};

RunResult run(const ExperimentConfig& cfg, const ExperimentData& data, const Model& model,
              const RunOptions& options = {});

RunResult run_paota(const ExperimentConfig& cfg, const ExperimentData& data, const Model& model,
                    const RunOptions& options = {});
RunResult run_local_sgd_baseline(const ExperimentConfig& cfg, const ExperimentData& data,
                                 const Model& model, const RunOptions& options = {});
RunResult run_cotaf_baseline(const ExperimentConfig& cfg, const ExperimentData& data,
                             const Model& model, const RunOptions& options = {});

/// Mean number of uploads per round of PAOTA under the configured latency
/// draws, from a timing-only replay of the protocol.
double paota_average_participation(const ExperimentConfig& cfg, const RunOptions& options = {});

/// Clients selected in a synchronous baseline round (sorted ids).
std::vector<std::size_t> select_clients(const ExperimentConfig& cfg, std::size_t round,
                                        std::size_t m);

}  // namespace paota
