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

#include "paota/powerctl/factors.hpp"

#include <algorithm>

#include "paota/core/errors.hpp"
#include "paota/core/metrics.hpp"

namespace paota {

double staleness_factor(double staleness, double omega) {
  if (!(staleness >= 0.0)) throw ConfigError("staleness must be non-negative");
  if (!(omega > 0.0)) throw ConfigError("omega must be positive");
  return omega / (staleness + omega);
}

double interference_factor(const ParamVector& delta_k, const ParamVector& global_move) {
  return (cosine(delta_k, global_move) + 1.0) / 2.0;
}

double power_from_beta(double beta, double rho, double theta, double p_max) {
  const double p = p_max * (beta * rho + (1.0 - beta) * theta);
  // Interpolation of values in [0, p_max]; clamp only rounding.
  return std::clamp(p, 0.0, p_max);
}

}  // namespace paota
