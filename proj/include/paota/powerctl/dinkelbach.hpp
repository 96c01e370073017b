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
#include <cstddef>
#include <vector>

#include "paota/core/errors.hpp"
#include "paota/powerctl/fqp.hpp"
#include "paota/powerctl/pla_mip.hpp"

namespace paota {

struct PlaConfig {
  std::size_t segments = 32;
  MipMethod method = MipMethod::kBranchAndBound;
};

struct DinkelbachIterate {
  double lambda = 0.0;       // parameter of this subproblem
  double F = 0.0;            // h2 - lambda h1 at the accepted beta (0 if rejected)
  double candidate_F = 0.0;  // h2 - lambda h1 at the subproblem's beta
  Eigen::VectorXd beta;      // accepted beta after this iterate
  std::size_t mip_nodes = 0;
};

struct DinkelbachTrace {
  std::vector<DinkelbachIterate> iterates;
  double tolerance = 0.0;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, DinkelbachTrace trace)
      : Error(what), trace_(std::move(trace)) {}
  const DinkelbachTrace& trace() const { return trace_; }

 private:
  DinkelbachTrace trace_;
};

struct DinkelbachResult {
  Eigen::VectorXd beta;
  double objective = 0.0;  // h1 / h2 at beta
  DinkelbachTrace trace;
};

/// Minimises h1/h2 over [0, 1]^n by maximising h2/h1 with Dinkelbach's
/// parametric scheme; each subproblem max h2 - lambda h1 is solved through
/// the eigen transform and the piecewise-linear MIP. Starts from beta = 0.5.
/// A subproblem solution replaces the incumbent only if its exact parametric
/// value is positive, so lambda never decreases.
DinkelbachResult dinkelbach_solve(const FractionalQP& fqp, double tolerance = 1e-6,
                                  const PlaConfig& pla = {}, std::size_t max_iterations = 50);

}  // namespace paota
