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

// Sample-based checks of the two auxiliary inequalities behind the bound.

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace paota {

/// F(w) = 0.5 w'Aw - b'w with A symmetric positive definite.
struct Quadratic {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;

  double value(const Eigen::VectorXd& w) const { return 0.5 * w.dot(A * w) - b.dot(w); }
  Eigen::VectorXd gradient(const Eigen::VectorXd& w) const { return A * w - b; }
  Eigen::VectorXd minimizer() const { return A.llt().solve(b); }
  double smoothness() const;  // largest eigenvalue of A
};

struct SmoothnessReport {
  std::size_t samples = 0;
  std::size_t violations = 0;       // lhs > rhs beyond rounding (1e-12 relative)
  double max_ratio = 0.0;           // max lhs / rhs over samples with rhs > 0
  double max_equality_error = 0.0;  // max |lhs - rhs| / max(1, rhs)
  Eigen::VectorXd witness;          // worst sample
  bool holds() const { return violations == 0; }
};

/// Tests ||grad F(w)||^2 <= 2 L (F(w) - F(w*)) at Gaussian samples around w*
/// (scale `radius`), with L the largest eigenvalue of A.
SmoothnessReport check_smoothness_gap(const Quadratic& f, std::size_t samples, std::uint64_t seed,
                                      double radius = 1.0);

/// Clients with local objectives F_k(w) = 0.5 (w - c_k)' A (w - c_k) and
/// stochastic gradients grad F_k + xi, xi ~ N(0, (sigma2 / dim) I).
struct QuadraticToy {
  Eigen::MatrixXd A;
  std::vector<Eigen::VectorXd> centers;
  double sigma2 = 0.0;
  double eta = 0.01;
  std::size_t M = 5;
  Eigen::VectorXd w_start;
};

struct DriftReport {
  std::size_t trials = 0;
  double lhs = 0.0;     // worst client: sum_tau E||w_g - w_{k,tau-1}||^2
  double lhs_se = 0.0;  // standard error of that estimate
  double rhs = 0.0;
  double L = 0.0;
  double zeta = 0.0;
  double vartheta = 1.0;
  double margin() const { return rhs - lhs; }
  bool holds() const { return lhs <= rhs + 2.0 * lhs_se; }
};

/// Monte-Carlo check of the local-drift bound
///   (eta^2 M^3 sigma^2 + 4 eta^2 M^3 L^2 zeta + 4 eta^2 M^3 vartheta^2 ||grad F(w_g)||^2)
///   / (1 - 2 eta^2 M^2 L^2).
/// With no staleness vartheta = 1. Throws ValidityError when the
/// denominator is not positive.
DriftReport check_local_drift(const QuadraticToy& toy, std::size_t trials, std::uint64_t seed);

}  // namespace paota
