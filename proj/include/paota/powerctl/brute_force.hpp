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

#include <Eigen/Dense>

#include "paota/powerctl/fqp.hpp"

namespace paota {

struct GridResult {
  Eigen::VectorXd beta;
  double objective = 0.0;  // h1 / h2
  std::size_t evaluated = 0;
};

/// Exhaustive minimiser of h1/h2 over the grid {0, step, 2 step, ..., 1}^n;
/// ties keep the lexicographically first point. Refuses n > 4 with
/// DimensionTooLargeError.
GridResult brute_force_beta(const FractionalQP& fqp, double grid_step);

}  // namespace paota
