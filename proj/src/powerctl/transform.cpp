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

#include "paota/powerctl/transform.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "paota/core/errors.hpp"
#include "paota/powerctl/errors.hpp"

namespace paota {

namespace {

constexpr double kMinRcond = 1e-12;

}  // namespace

EigenTransform eigen_transform(const Eigen::MatrixXd& G, const Eigen::MatrixXd& Q) {
  const Eigen::Index n = G.rows();
  if (n == 0 || G.cols() != n || Q.rows() != n || Q.cols() != n) {
    throw ConfigError("eigen_transform: matrices must be square and of equal size");
  }
  EigenTransform t;
  t.G_used = 0.5 * (G + G.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(t.G_used);
  if (llt.info() != Eigen::Success || llt.rcond() < kMinRcond) {
    const double trace = t.G_used.trace();
    t.tau = trace > 0.0 ? 1e-8 * trace / static_cast<double>(n) : 1e-8;
    t.G_used.diagonal().array() += t.tau;
    llt.compute(t.G_used);
  }
  t.rcond = llt.info() == Eigen::Success ? llt.rcond() : 0.0;
  if (llt.info() != Eigen::Success || t.rcond < kMinRcond * 1e-4) {
    throw NumericalError("eigen_transform: Cholesky factorisation failed", t.rcond);
  }
  t.M1 = llt.matrixU();
  // S = M1^{-T} Q M1^{-1}, via two triangular solves.
  const auto U = llt.matrixU();
  Eigen::MatrixXd X = U.transpose().solve(0.5 * (Q + Q.transpose()));
  Eigen::MatrixXd S = U.transpose().solve(X.transpose()).transpose();
  S = 0.5 * (S + S.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("eigen_transform: eigen-decomposition failed", t.rcond);
  }
  t.M2 = eig.eigenvectors();
  t.N = eig.eigenvalues();
  t.M = t.M2.transpose() * t.M1;
  // M^{-1} = M1^{-1} M2.
  t.M_inv = U.solve(t.M2);
  return t;
}

SeparableObjective separable_objective(const FractionalQP& fqp, const EigenTransform& t,
                                       double lambda) {
  SeparableObjective s;
  s.quad = t.N.array() - lambda;
  s.lin = t.M_inv.transpose() * (fqp.q - lambda * fqp.g);
  s.constant = fqp.q0 - lambda * fqp.g0;
  return s;
}

PlaBounds pla_bounds(const Eigen::MatrixXd& M) {
  PlaBounds b;
  b.lo = M.cwiseMin(0.0).rowwise().sum();
  b.hi = M.cwiseMax(0.0).rowwise().sum();
  return b;
}

std::vector<std::vector<double>> pla_breakpoints(const PlaBounds& bounds, std::size_t segments) {
  if (segments == 0) throw ConfigError("pla_breakpoints: need at least one segment");
  std::vector<std::vector<double>> z(static_cast<std::size_t>(bounds.lo.size()));
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double lo = bounds.lo[static_cast<Eigen::Index>(i)];
    const double hi = bounds.hi[static_cast<Eigen::Index>(i)];
    z[i].resize(segments + 1);
    for (std::size_t j = 0; j <= segments; ++j) {
      z[i][j] = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(segments);
    }
    z[i][segments] = hi;
  }
  return z;
}

}  // namespace paota
