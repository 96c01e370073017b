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

#include "paota/analysis/inequalities.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "paota/core/errors.hpp"
#include "paota/core/random.hpp"

namespace paota {

double Quadratic::smoothness() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

namespace {

Eigen::VectorXd gaussian(Rng& rng, Eigen::Index n, double scale) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = scale * rng.normal();
  return v;
}

}  // namespace

SmoothnessReport check_smoothness_gap(const Quadratic& f, std::size_t samples, std::uint64_t seed,
                                      double radius) {
  const Eigen::VectorXd w_star = f.minimizer();
  const double L = f.smoothness();
  Rng rng(derive_seed(seed, Stream::kProbe));
  SmoothnessReport rep;
  rep.samples = samples;
  rep.witness = w_star;
  double worst = -1.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Eigen::VectorXd w = w_star + gaussian(rng, w_star.size(), radius);
    const double lhs = f.gradient(w).squaredNorm();
    // F(w) - F* = 0.5 (w - w*)' A (w - w*) for a quadratic; the difference of
    // values loses digits when F* is large.
    const Eigen::VectorXd e = w - w_star;
    const double gap = 0.5 * e.dot(f.A * e);
    const double rhs = 2.0 * L * gap;
    if (lhs > rhs * (1.0 + 1e-12) + 1e-300) ++rep.violations;
    rep.max_equality_error =
        std::max(rep.max_equality_error, std::abs(lhs - rhs) / std::max(1.0, rhs));
    if (rhs > 0.0) {
      const double ratio = lhs / rhs;
      rep.max_ratio = std::max(rep.max_ratio, ratio);
      if (ratio > worst) {
        worst = ratio;
        rep.witness = w;
      }
    }
  }
  return rep;
}

DriftReport check_local_drift(const QuadraticToy& toy, std::size_t trials, std::uint64_t seed) {
  if (toy.centers.empty()) throw ConfigError("check_local_drift: no clients");
  if (trials < 2) throw ConfigError("check_local_drift: need at least two trials");
  const Eigen::Index n = toy.A.rows();
  const double M = static_cast<double>(toy.M);

  DriftReport rep;
  rep.trials = trials;
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(toy.A, Eigen::EigenvaluesOnly);
    rep.L = eig.eigenvalues().maxCoeff();
  }
  const double den = 1.0 - 2.0 * toy.eta * toy.eta * M * M * rep.L * rep.L;
  if (!(den > 0.0)) throw ValidityError("check_local_drift: 1 - 2 eta^2 M^2 L^2 <= 0");

  Eigen::VectorXd c_bar = Eigen::VectorXd::Zero(n);
  for (const auto& c : toy.centers) c_bar += c;
  c_bar /= static_cast<double>(toy.centers.size());
  // grad F_k(w) - grad F(w) = A (c_bar - c_k) at every w.
  for (const auto& c : toy.centers)
    rep.zeta = std::max(rep.zeta, (toy.A * (c_bar - c)).squaredNorm());
  const double grad_sq = (toy.A * (toy.w_start - c_bar)).squaredNorm();

  const double e2m3 = toy.eta * toy.eta * M * M * M;
  rep.rhs = (e2m3 * toy.sigma2 + 4.0 * e2m3 * rep.L * rep.L * rep.zeta +
             4.0 * e2m3 * rep.vartheta * rep.vartheta * grad_sq) /
            den;

  const double noise_sd = std::sqrt(toy.sigma2 / static_cast<double>(n));
  for (std::size_t k = 0; k < toy.centers.size(); ++k) {
    Rng rng(derive_seed(seed, Stream::kProbe, {k}));
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      Eigen::VectorXd w = toy.w_start;
      double drift = 0.0;
      for (std::size_t tau = 1; tau <= toy.M; ++tau) {
        drift += (toy.w_start - w).squaredNorm();  // uses w_{k, tau-1}
        const Eigen::VectorXd g = toy.A * (w - toy.centers[k]) + gaussian(rng, n, noise_sd);
        w -= toy.eta * g;
      }
      sum += drift;
      sum_sq += drift * drift;
    }
    const double tn = static_cast<double>(trials);
    const double mean = sum / tn;
    const double var = std::max(0.0, (sum_sq - tn * mean * mean) / (tn - 1.0));
    if (k == 0 || mean > rep.lhs) {
      rep.lhs = mean;
      rep.lhs_se = std::sqrt(var / tn);
    }
  }
  return rep;
}

}  // namespace paota
