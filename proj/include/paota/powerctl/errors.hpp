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

#include <string>

#include "paota/core/errors.hpp"

namespace paota {

// Every client in the problem has zero transmit power at every beta.
class DegenerateProblemError : public Error {
 public:
  using Error::Error;
};

// Factorisation of the quadratic form failed even after regularisation.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double condition_estimate)
      : Error(what + " (reciprocal condition estimate " + std::to_string(condition_estimate) + ")"),
        condition_estimate_(condition_estimate) {}
  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class DimensionTooLargeError : public Error {
 public:
  DimensionTooLargeError(std::size_t n, double grid_points)
      : Error("brute force over " + std::to_string(n) + " dimensions would evaluate " +
              std::to_string(grid_points) + " grid points (limit: 4 dimensions)"),
        grid_points_(grid_points) {}
  double grid_points() const { return grid_points_; }

 private:
  double grid_points_;
};

}  // namespace paota
