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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "paota/core/dataset.hpp"
#include "paota/core/model.hpp"
#include "paota/core/param_vector.hpp"

namespace paota {

struct TrainerConfig {
  std::size_t local_rounds = 5;  // M
  double learning_rate = 0.05;   // eta
  std::size_t batch_size = 32;   // >= shard size means full batch
  std::uint64_t seed = 0;        // mini-batch stream for this job

  // Throws ConfigError unless M >= 1, eta >= 0 and finite, batch >= 1.
  void validate() const;

  // eta < 1 / (sqrt(2) M L), i.e. 1 - 2 eta^2 M^2 L^2 > 0.
  bool step_condition_holds(double L) const {
    const double m = static_cast<double>(local_rounds);
    return 1.0 - 2.0 * learning_rate * learning_rate * m * m * L * L > 0.0;
  }
};

struct LocalResult {
  ParamVector w_local;
  ParamVector delta;  // w_local - w_start, exactly
  double last_batch_loss = 0.0;
};

/// Runs exactly cfg.local_rounds mini-batch SGD steps from w_start on the
/// shard. Batches are drawn without replacement within each step from
/// Stream::kTraining keyed by (cfg.seed, owner, step).
/// Throws DivergenceError when a loss or gradient turns non-finite.
LocalResult local_train(const Model& model, const ParamVector& w_start, const DataShard& shard,
                        const TrainerConfig& cfg);

/// Same, over an explicit row list of a dataset (centralised reference runs).
LocalResult local_train(const Model& model, const ParamVector& w_start, const Dataset& data,
                        std::span<const std::size_t> rows, const TrainerConfig& cfg,
                        std::uint64_t stream_key = 0);

}  // namespace paota
