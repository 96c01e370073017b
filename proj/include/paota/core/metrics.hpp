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
#include <span>

#include "paota/core/dataset.hpp"
#include "paota/core/model.hpp"
#include "paota/core/param_vector.hpp"

namespace paota {

struct Evaluation {
  double loss = 0.0;
  double accuracy = 0.0;  // NaN for models that do not classify
  std::size_t samples = 0;
};

/// Mean loss and accuracy. Throws DataError on empty input.
Evaluation evaluate(const Model& model, const ParamVector& w, const Dataset& data);
Evaluation evaluate(const Model& model, const ParamVector& w, const DataShard& shard);

/// Global objective over the multiset union of shards. The loss equals
/// sum_k (D_k / D) F_k(w) with D = sum_k D_k.
Evaluation evaluate(const Model& model, const ParamVector& w, std::span<const DataShard> shards);

inline constexpr double kCosineNormGuard = 1e-12;

/// Cosine similarity, or 0 when either norm is below kCosineNormGuard.
/// The result is clamped to [-1, 1].
double cosine(const ParamVector& a, const ParamVector& b);

}  // namespace paota
