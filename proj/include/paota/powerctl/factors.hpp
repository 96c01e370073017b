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

#include "paota/core/param_vector.hpp"

namespace paota {

/// rho = Omega / (s + Omega).
double staleness_factor(double staleness, double omega);

/// theta = (cos(delta_k, global_move) + 1) / 2; 0.5 when either is ~zero.
double interference_factor(const ParamVector& delta_k, const ParamVector& global_move);

/// p = p_max (beta rho + (1 - beta) theta).
double power_from_beta(double beta, double rho, double theta, double p_max);

}  // namespace paota
