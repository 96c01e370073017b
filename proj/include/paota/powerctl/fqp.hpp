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

// Per-round power-allocation problem for the clients that upload this
// round, written as a ratio of two quadratics in the interpolation weights
// beta in [0, 1]^n:
//
//   minimise h1(beta) / h2(beta),
//   h1 = beta' G beta + g' beta + g0,   h2 = beta' Q beta + q' beta + q0,
//
// where p(beta) = P (theta + D beta), P = diag(p_max), D = diag(rho - theta).

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

namespace paota {

struct FqpProvenance {
  Eigen::VectorXd rho;
  Eigen::VectorXd theta;
  Eigen::VectorXd p_max;
  Eigen::VectorXd D;             // rho - theta
  std::vector<std::size_t> ids;  // positions of the active clients in the input
  double L = 0.0;
  double eps = 0.0;
  double K = 0.0;
  double d = 0.0;
  double noise_var = 0.0;
};

struct FractionalQP {
  Eigen::MatrixXd G;
  Eigen::VectorXd g;
  double g0 = 0.0;
  Eigen::MatrixXd Q;
  Eigen::VectorXd q;
  double q0 = 0.0;
  FqpProvenance prov;

  std::size_t size() const { return static_cast<std::size_t>(g.size()); }
  double h1(const Eigen::VectorXd& beta) const { return beta.dot(G * beta) + g.dot(beta) + g0; }
  double h2(const Eigen::VectorXd& beta) const { return beta.dot(Q * beta) + q.dot(beta) + q0; }
  // h1 / h2, +inf where h2 = 0.
  double ratio(const Eigen::VectorXd& beta) const;
  // Transmit powers p(beta) of the active clients.
  Eigen::VectorXd powers(const Eigen::VectorXd& beta) const;
};

struct FqpInputs {
  std::span<const double> rho;
  std::span<const double> theta;
  std::span<const double> p_max;
  std::span<const int> b;
  double L = 10.0;
  double eps = 1.0;
  double K_active = 1.0;
  double d = 1.0;
  double noise_var = 0.0;
};

/// Builds the problem restricted to {k : b_k = 1}, with Theta = L eps^2 K I.
/// Throws ConfigError when nobody is active and DegenerateProblemError when
/// every active client has rho = theta = 0 (or zero p_max).
FractionalQP assemble_fqp(const FqpInputs& in);

/// The uplink objective evaluated directly from powers of the active set:
/// L eps^2 K sum(alpha^2) + 2 L d sigma_n^2 / (sum p)^2.
double power_objective(const Eigen::VectorXd& p, double L, double eps, double K, double d,
                       double noise_var);

}  // namespace paota
