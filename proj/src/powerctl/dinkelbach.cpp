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

#include "paota/powerctl/dinkelbach.hpp"

#include "paota/powerctl/transform.hpp"

namespace paota {

DinkelbachResult dinkelbach_solve(const FractionalQP& fqp, double tolerance, const PlaConfig& pla,
                                  std::size_t max_iterations) {
  const auto n = static_cast<Eigen::Index>(fqp.size());
  if (n == 0) throw ConfigError("dinkelbach_solve: empty problem");
  if (!(tolerance > 0.0)) throw ConfigError("dinkelbach_solve: tolerance must be positive");

  const EigenTransform transform = eigen_transform(fqp);
  DinkelbachTrace trace;
  trace.tolerance = tolerance;

  Eigen::VectorXd beta = Eigen::VectorXd::Constant(n, 0.5);
  double lambda = fqp.h2(beta) / fqp.h1(beta);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    const PlaMip mip = build_pla_mip(fqp, transform, lambda, pla.segments);
    const PlaSolution sol = pla_mip_solve(mip, pla.method);

    DinkelbachIterate step;
    step.lambda = lambda;
    step.candidate_F = dinkelbach_value(fqp, sol.beta, lambda);
    step.mip_nodes = sol.nodes;
    const bool accept = step.candidate_F > 0.0;
    if (accept) beta = sol.beta;
    step.F = accept ? step.candidate_F : 0.0;
    step.beta = beta;
    trace.iterates.push_back(step);

    if (step.F <= tolerance) {
      return {beta, fqp.ratio(beta), std::move(trace)};
    }
    lambda = fqp.h2(beta) / fqp.h1(beta);
  }
  throw NonConvergenceError(
      "dinkelbach_solve: no convergence within " + std::to_string(max_iterations) + " iterations",
      std::move(trace));
}

}  // namespace paota
