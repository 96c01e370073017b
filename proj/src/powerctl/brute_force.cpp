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

#include "paota/powerctl/brute_force.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "paota/core/errors.hpp"
#include "paota/powerctl/errors.hpp"

namespace paota {

GridResult brute_force_beta(const FractionalQP& fqp, double grid_step) {
  if (!(grid_step > 0.0) || grid_step > 1.0) throw ConfigError("brute_force_beta: step in (0, 1]");
  const std::size_t n = fqp.size();
  const auto levels = static_cast<std::size_t>(std::llround(1.0 / grid_step)) + 1;
  if (n > 4) {
    throw DimensionTooLargeError(n, std::pow(static_cast<double>(levels), static_cast<double>(n)));
  }
  std::vector<std::size_t> idx(n, 0);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  GridResult best;
  best.objective = std::numeric_limits<double>::infinity();
  best.beta = beta;
  while (true) {
    for (std::size_t i = 0; i < n; ++i) {
      beta[static_cast<Eigen::Index>(i)] =
          std::min(1.0, static_cast<double>(idx[i]) / static_cast<double>(levels - 1));
    }
    const double v = fqp.ratio(beta);
    ++best.evaluated;
    if (v < best.objective) {
      best.objective = v;
      best.beta = beta;
    }
    std::size_t pos = n;
    while (pos > 0) {
      if (++idx[pos - 1] < levels) break;
      idx[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
  return best;
}

}  // namespace paota
