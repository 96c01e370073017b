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
#include <vector>

#include "paota/core/random.hpp"
#include "paota/powerctl/fqp.hpp"

namespace paota::testing {

// Random power-control problem with staleness-derived rho, uniform theta,
// heterogeneous p_max and a noise level spanning negligible to dominant.
inline FractionalQP random_fqp(Rng& rng, std::size_t n) {
  std::vector<double> rho(n), theta(n), p_max(n);
  std::vector<int> b(n, 1);
  for (std::size_t k = 0; k < n; ++k) {
    rho[k] = 3.0 / (3.0 + static_cast<double>(rng.index(4)));
    theta[k] = rng.uniform();
    p_max[k] = rng.uniform(0.05, 15.0);
  }
  FqpInputs in{rho, theta, p_max, b};
  in.L = 10.0;
  in.eps = 1.0;
  in.K_active = static_cast<double>(n);
  in.d = 8070.0;
  in.noise_var = std::pow(10.0, rng.uniform(-8.0, 0.0));
  return assemble_fqp(in);
}

}  // namespace paota::testing
