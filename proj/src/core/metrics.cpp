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

#include "paota/core/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "paota/core/errors.hpp"

namespace paota {

namespace {

Evaluation evaluate_rows(const Model& model, const ParamVector& w, const Dataset& data,
                         std::span<const std::size_t> rows) {
  if (rows.empty()) throw DataError("evaluate: empty data");
  Evaluation out;
  out.samples = rows.size();
  out.loss = model.loss_and_gradient(w.span(), data, rows, {});
  const auto correct = model.count_correct(w.span(), data, rows);
  out.accuracy = correct ? static_cast<double>(*correct) / static_cast<double>(rows.size())
                         : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace

Evaluation evaluate(const Model& model, const ParamVector& w, const Dataset& data) {
  const auto rows = data.all_rows();
  return evaluate_rows(model, w, data, rows);
}

Evaluation evaluate(const Model& model, const ParamVector& w, const DataShard& shard) {
  if (!shard.source) throw DataError("evaluate: shard has no dataset");
  return evaluate_rows(model, w, *shard.source, shard.indices);
}

Evaluation evaluate(const Model& model, const ParamVector& w, std::span<const DataShard> shards) {
  if (shards.empty()) throw DataError("evaluate: no shards");
  const Dataset* source = shards.front().source.get();
  std::vector<std::size_t> rows;
  for (const DataShard& s : shards) {
    if (s.source.get() != source) throw DataError("evaluate: shards from different datasets");
    rows.insert(rows.end(), s.indices.begin(), s.indices.end());
  }
  if (source == nullptr) throw DataError("evaluate: shard has no dataset");
  return evaluate_rows(model, w, *source, rows);
}

double cosine(const ParamVector& a, const ParamVector& b) {
  if (a.size() != b.size()) throw ConfigError("cosine: dimension mismatch");
  const double na = a.norm();
  const double nb = b.norm();
  if (na < kCosineNormGuard || nb < kCosineNormGuard) return 0.0;
  const double c = kernels::dot(a.span(), b.span()) / (na * nb);
  return std::clamp(c, -1.0, 1.0);
}

}  // namespace paota
