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

#include "paota/powerctl/fqp.hpp"

#include <limits>

#include "paota/core/errors.hpp"
#include "paota/powerctl/errors.hpp"

namespace paota {

double FractionalQP::ratio(const Eigen::VectorXd& beta) const {
  const double den = h2(beta);
  if (!(den > 0.0)) return std::numeric_limits<double>::infinity();
  return h1(beta) / den;
}

Eigen::VectorXd FractionalQP::powers(const Eigen::VectorXd& beta) const {
  Eigen::VectorXd p(beta.size());
  for (Eigen::Index k = 0; k < beta.size(); ++k) {
    p[k] = prov.p_max[k] * (beta[k] * prov.rho[k] + (1.0 - beta[k]) * prov.theta[k]);
  }
  return p;
}

FractionalQP assemble_fqp(const FqpInputs& in) {
  const std::size_t K = in.b.size();
  if (in.rho.size() != K || in.theta.size() != K || in.p_max.size() != K) {
    throw ConfigError("assemble_fqp: input size mismatch");
  }
  FractionalQP f;
  for (std::size_t k = 0; k < K; ++k) {
    if (in.b[k] != 0) f.prov.ids.push_back(k);
  }
  const auto n = static_cast<Eigen::Index>(f.prov.ids.size());
  if (n == 0) throw ConfigError("assemble_fqp: no active client");

  f.prov.rho.resize(n);
  f.prov.theta.resize(n);
  f.prov.p_max.resize(n);
  bool any_power = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t k = f.prov.ids[static_cast<std::size_t>(i)];
    f.prov.rho[i] = in.rho[k];
    f.prov.theta[i] = in.theta[k];
    f.prov.p_max[i] = in.p_max[k];
    if (in.p_max[k] > 0.0 && (in.rho[k] > 0.0 || in.theta[k] > 0.0)) any_power = true;
  }
  if (!any_power) throw DegenerateProblemError("assemble_fqp: zero power floor for every client");
  f.prov.D = f.prov.rho - f.prov.theta;
  f.prov.L = in.L;
  f.prov.eps = in.eps;
  f.prov.K = in.K_active;
  f.prov.d = in.d;
  f.prov.noise_var = in.noise_var;

  const double theta_scale = in.L * in.eps * in.eps * in.K_active;
  // u = P D (coefficient of beta in p), v = P theta (p at beta = 0).
  const Eigen::VectorXd u = f.prov.p_max.cwiseProduct(f.prov.D);
  const Eigen::VectorXd v = f.prov.p_max.cwiseProduct(f.prov.theta);

  f.G = theta_scale * u.cwiseProduct(u).asDiagonal().toDenseMatrix();
  f.g = 2.0 * theta_scale * v.cwiseProduct(u);
  f.g0 = theta_scale * v.squaredNorm() + 2.0 * in.L * in.d * in.noise_var;

  const double sv = v.sum();
  f.Q = u * u.transpose();
  f.q = 2.0 * sv * u;
  f.q0 = sv * sv;
  return f;
}

double power_objective(const Eigen::VectorXd& p, double L, double eps, double K, double d,
                       double noise_var) {
  const double s = p.sum();
  if (!(s > 0.0)) return std::numeric_limits<double>::infinity();
  const Eigen::VectorXd alpha = p / s;
  return L * eps * eps * K * alpha.squaredNorm() + 2.0 * L * d * noise_var / (s * s);
}

}  // namespace paota
