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

// Dense two-phase primal simplex for small linear programs
//   maximise c'x  subject to  A x {<=, =, >=} b,  x >= 0.

#include <cstddef>
#include <vector>

namespace paota {

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct LpRow {
  std::vector<double> coef;  // dense, length num_vars
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<LpRow> rows;

  // Appends a row and returns a reference to its coefficients.
  std::vector<double>& add_row(RowSense sense, double rhs) {
    rows.push_back({std::vector<double>(num_vars, 0.0), sense, rhs});
    return rows.back().coef;
  }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  std::vector<double> x;
  std::size_t iterations = 0;
};

/// Dantzig pricing with a permanent switch to Bland's rule after a run of
/// degenerate pivots. Deterministic for a given input.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace paota
