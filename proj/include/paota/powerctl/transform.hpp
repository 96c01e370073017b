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

// Change of variables that separates the Dinkelbach subproblem
//   F(beta; lambda) = h2(beta) - lambda h1(beta)
// into independent one-dimensional quadratics. With G = M1' M1 and
// M1^{-T} Q M1^{-1} = M2 N M2', the map z = M beta, M = M2' M1 gives
//   F = z' (N - lambda I) z + (q - lambda g)' M^{-1} z + (q0 - lambda g0).

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "paota/powerctl/fqp.hpp"

namespace paota {

struct EigenTransform {
  Eigen::MatrixXd M1;  // upper triangular, G_used = M1' M1
  Eigen::MatrixXd M2;  // orthogonal eigenvectors of M1^{-T} Q M1^{-1}
  Eigen::VectorXd N;   // eigenvalues, ascending
  Eigen::MatrixXd M;   // M2' M1
  Eigen::MatrixXd M_inv;
  Eigen::MatrixXd G_used;  // G, or G + tau I when regularised
  double tau = 0.0;
  double rcond = 0.0;  // reciprocal condition estimate of the factorisation

  Eigen::VectorXd to_z(const Eigen::VectorXd& beta) const { return M * beta; }
  Eigen::VectorXd to_beta(const Eigen::VectorXd& z) const { return M_inv * z; }
};

/// Factorises G and Q. G is replaced by G + tau I, tau = 1e-8 trace(G)/n
/// (1e-8 when the trace is zero), if it is not numerically positive definite.
/// Throws NumericalError when the factorisation still fails.
EigenTransform eigen_transform(const Eigen::MatrixXd& G, const Eigen::MatrixXd& Q);
inline EigenTransform eigen_transform(const FractionalQP& fqp) {
  return eigen_transform(fqp.G, fqp.Q);
}

/// Separable objective sum_i quad_i z_i^2 + lin_i z_i + constant.
struct SeparableObjective {
  Eigen::VectorXd quad;  // n_i - lambda
  Eigen::VectorXd lin;   // ((q - lambda g)' M^{-1})_i
  double constant = 0.0;

  double at(const Eigen::VectorXd& z) const {
    return quad.dot(z.cwiseProduct(z)) + lin.dot(z) + constant;
  }
};

SeparableObjective separable_objective(const FractionalQP& fqp, const EigenTransform& t,
                                       double lambda);

/// h2 - lambda h1 evaluated directly, with G as stored in `fqp`.
inline double dinkelbach_value(const FractionalQP& fqp, const Eigen::VectorXd& beta,
                               double lambda) {
  return fqp.h2(beta) - lambda * fqp.h1(beta);
}

struct PlaBounds {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
};

/// Exact image bounds of the unit box under z = M beta.
PlaBounds pla_bounds(const Eigen::MatrixXd& M);

/// segments + 1 equally spaced breakpoints per dimension, endpoints exact.
std::vector<std::vector<double>> pla_breakpoints(const PlaBounds& bounds, std::size_t segments);

}  // namespace paota
