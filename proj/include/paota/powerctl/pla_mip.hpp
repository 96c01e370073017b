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

// Piecewise-linear 0-1 model of the separable Dinkelbach subproblem.
//
// Each coordinate z_i of z = M beta is written as a convex combination of
// breakpoints, z_i = sum_j gamma_ij z_ij, and its quadratic term is replaced
// by the same combination of breakpoint values. For dimensions whose
// coefficient n_i - lambda is negative the combination is concave and the
// maximiser uses adjacent breakpoints on its own. Convex dimensions get
// segment binaries c_ij with sum_j c_ij = 1 and
//   gamma_i1 <= c_i1, gamma_ij <= c_i,j-1 + c_ij, gamma_i,s+1 <= c_is.
// beta = M^{-1} z is kept inside [0, 1]^n by linear rows.

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "paota/powerctl/fqp.hpp"
#include "paota/powerctl/transform.hpp"

namespace paota {

enum class MipMethod {
  kBranchAndBound,  // best-bound search on the LP relaxation
  kEnumerate,       // every segment assignment of the convex dimensions
};

struct PlaMip {
  EigenTransform transform;
  SeparableObjective objective;
  PlaBounds bounds;
  std::vector<std::vector<double>> z;  // breakpoints per dimension
  std::vector<char> convex;            // objective.quad[i] > 0
  std::size_t segments = 0;

  std::size_t size() const { return z.size(); }
  std::size_t num_convex() const;
  std::size_t num_binaries() const { return num_convex() * segments; }
  // sum_i |n_i - lambda| (segment width_i)^2 / 4
  double gap_bound() const;
};

PlaMip build_pla_mip(const FractionalQP& fqp, const EigenTransform& transform, double lambda,
                     std::size_t segments);

struct PlaSolution {
  Eigen::VectorXd z;
  Eigen::VectorXd beta;          // M^{-1} z, clamped to [0, 1]
  double value = 0.0;            // piecewise-linear objective at the optimum
  double separable_value = 0.0;  // exact separable quadratic at z
  std::vector<int> segment;      // chosen segment per convex dimension, -1 otherwise
  std::size_t nodes = 0;         // LP relaxations (B&B) or assignments (enumeration)
};

/// Exact optimum of the piecewise-linear model. Throws InfeasibleError when
/// no assignment admits a feasible beta.
PlaSolution pla_mip_solve(const PlaMip& mip, MipMethod method = MipMethod::kBranchAndBound,
                          std::size_t max_nodes = 1000000);

}  // namespace paota
