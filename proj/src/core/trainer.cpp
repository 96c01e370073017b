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

#include "paota/core/trainer.hpp"

#include <algorithm>

#include "paota/core/errors.hpp"
#include "paota/core/random.hpp"

namespace paota {

void TrainerConfig::validate() const {
  if (local_rounds == 0) throw ConfigError("local_rounds must be >= 1");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning_rate must be finite and non-negative");
  }
  if (batch_size == 0) throw ConfigError("batch_size must be >= 1");
}

LocalResult local_train(const Model& model, const ParamVector& w_start, const Dataset& data,
                        std::span<const std::size_t> rows, const TrainerConfig& cfg,
                        std::uint64_t stream_key) {
  cfg.validate();
  if (rows.empty()) throw DataError("local_train: empty shard");
  if (w_start.size() != model.dimension()) throw ConfigError("local_train: dimension mismatch");
  if (!w_start.all_finite()) throw DivergenceError("local_train: non-finite start model", 0);

  const std::size_t d = model.dimension();
  const bool full_batch = cfg.batch_size >= rows.size();
  ParamVector w = w_start;
  ParamVector delta(d);
  std::vector<double> grad(d);
  std::vector<std::size_t> batch;
  if (full_batch) batch.assign(rows.begin(), rows.end());

  LocalResult result;
  for (std::size_t step = 0; step < cfg.local_rounds; ++step) {
    if (!full_batch) {
      Rng rng(derive_seed(cfg.seed, Stream::kTraining, {stream_key, step}));
      batch.clear();
      for (std::size_t pick : rng.sample_without_replacement(rows.size(), cfg.batch_size)) {
        batch.push_back(rows[pick]);
      }
      std::sort(batch.begin(), batch.end());
    }
    const double loss = model.loss_and_gradient(w.span(), data, batch, grad);
    if (!std::isfinite(loss)) throw DivergenceError("local_train: non-finite loss", step);
    for (double g : grad) {
      if (!std::isfinite(g)) throw DivergenceError("local_train: non-finite gradient", step);
    }
    result.last_batch_loss = loss;
    kernels::axpy(-cfg.learning_rate, grad, delta.span());
    w = w_start + delta;
  }
  result.w_local = std::move(w);
  result.delta = std::move(delta);
  return result;
}

LocalResult local_train(const Model& model, const ParamVector& w_start, const DataShard& shard,
                        const TrainerConfig& cfg) {
  if (!shard.source) throw DataError("local_train: shard has no dataset");
  return local_train(model, w_start, *shard.source, shard.indices, cfg,
                     static_cast<std::uint64_t>(shard.owner));
}

}  // namespace paota
