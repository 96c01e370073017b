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

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <vector>

#include "paota/analysis/constants.hpp"
#include "paota/analysis/inequalities.hpp"
#include "paota/analysis/theory.hpp"
#include "paota/core/errors.hpp"
#include "paota/core/model.hpp"
#include "paota/core/random.hpp"

using namespace paota;

namespace {

TheoryConstants random_constants(Rng& rng) {
  TheoryConstants c;
  c.L = rng.uniform(0.5, 10.0);
  c.M = static_cast<double>(1 + rng.index(6));
  // Keep 1 - 2 eta^2 M^2 L^2 in (0.05, 1).
  c.eta = rng.uniform(0.01, 0.97) / (std::sqrt(2.0) * c.M * c.L);
  c.zeta = rng.uniform(0.0, 5.0);
  c.sigma2 = rng.uniform(0.0, 5.0);
  c.delta = rng.uniform(-0.5, 0.5);
  c.eps = rng.uniform(0.1, 2.0);
  c.vartheta = rng.uniform(1.0, 3.0);
  c.K = static_cast<double>(1 + rng.index(100));
  c.d = static_cast<double>(1 + rng.index(10000));
  c.noise_var = std::pow(10.0, rng.uniform(-14.0, -2.0));
  return c;
}

Eigen::MatrixXd random_spd(Rng& rng, int n) {
  Eigen::MatrixXd X(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) X(i, j) = rng.normal();
  }
  return X * X.transpose() + 0.1 * Eigen::MatrixXd::Identity(n, n);
}

}  // namespace

TEST_CASE("contraction factor against an expanded re-derivation") {
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    const TheoryConstants c = random_constants(rng);
    const double L = c.L, e = c.eta, M = c.M, v = c.vartheta;
    const double den = 1 - 2 * e * e * M * M * L * L;
    const double expect = 1 + 2 * L * c.delta - L * e * M + 8 * L * L * e * e * M * v * v +
                          (8 * std::pow(L, 3) * std::pow(e, 3) * std::pow(M, 3) * v * v +
                           32 * std::pow(L, 4) * std::pow(e, 4) * std::pow(M, 4) * v * v) /
                              den;
    const ArResult a = compute_Ar(c);
    CHECK(std::abs(a.value - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
    CHECK(a.contraction == (a.value < 1.0));
  }
}

TEST_CASE("error-floor terms against an expanded re-derivation") {
  Rng rng(32);
  for (int t = 0; t < 100; ++t) {
    const TheoryConstants c = random_constants(rng);
    const std::size_t K = 1 + rng.index(6);
    std::vector<double> p(K), alpha(K);
    std::vector<int> b(K);
    double sum = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      b[k] = k == 0 || rng.uniform() < 0.7;
      p[k] = rng.uniform(0.1, 15.0);
      sum += b[k] * p[k];
    }
    for (std::size_t k = 0; k < K; ++k) alpha[k] = b[k] * p[k] / sum;
    const double L = c.L, e = c.eta, M = c.M;
    const double den = 1 - 2 * e * e * M * M * L * L;
    const double a = 2 * e * M * c.zeta + 8 * L * e * M * M * c.zeta +
                     (4 * std::pow(e, 3) * std::pow(M, 3) * std::pow(L, 4) +
                      16 * std::pow(e, 4) * std::pow(M, 4) * std::pow(L, 5)) *
                         c.zeta / den;
    const double bb = 2 * e * M * L * L * c.eps * c.eps;
    const double cc =
        2 * e * e * L * M * M * c.sigma2 + (std::pow(e, 3) * L * L * std::pow(M, 3) +
                                            4 * std::pow(e, 4) * std::pow(L, 3) * std::pow(M, 4)) *
                                               c.sigma2 / den;
    double sq = 0.0;
    for (double x : alpha) sq += x * x;
    const double d = L * c.eps * c.eps * c.K * sq;
    const double ee = 2 * L * c.d * c.noise_var / (sum * sum);
    const GrTerms g = compute_Gr(c, alpha, p, b);
    auto close = [](double x, double y) {
      return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y));
    };
    CHECK(close(g.a, a));
    CHECK(close(g.b, bb));
    CHECK(close(g.c, cc));
    CHECK(close(g.d, d));
    CHECK(std::abs(g.e - ee) <= 1e-12 * ee);
    CHECK(close(g.total(), a + bb + cc + d + ee));

    // Doubling every power quarters the noise term and leaves the weights alone.
    std::vector<double> p2 = p;
    for (double& x : p2) x *= 2;
    const GrTerms g2 = compute_Gr(c, alpha, p2, b);
    CHECK(g2.e * 4.0 == doctest::Approx(g.e).epsilon(1e-14));
    CHECK(g2.d == g.d);
  }
}

TEST_CASE("invalid step size is rejected") {
  TheoryConstants c;
  c.eta = 0.1;  // 1 - 2 (0.1)^2 25 100 < 0
  CHECK_FALSE(c.valid());
  CHECK_THROWS_AS(compute_Ar(c), ValidityError);
  CHECK_THROWS_AS(g_term_e(c, 0.0), ValidityError);
}

TEST_CASE("bound recursion equals forward iteration of e <- A e + G") {
  Rng rng(33);
  for (int t = 0; t < 50; ++t) {
    const std::size_t R = 1 + rng.index(80);
    std::vector<double> A(R), G(R);
    for (std::size_t r = 0; r < R; ++r) {
      A[r] = rng.uniform(0.5, 1.1);
      G[r] = rng.uniform(0.0, 2.0);
    }
    const double gap = rng.uniform(0.0, 10.0);
    double e = gap;
    for (std::size_t r = 0; r < R; ++r) e = A[r] * e + G[r];
    CHECK(bound_recursion(A, G, gap) == doctest::Approx(e).epsilon(1e-11));
  }
  const std::vector<double> A = {0.9, -0.5}, G = {1.0, 2.0};
  CHECK(bound_recursion(A, G, 3.0) == doctest::Approx(-0.5 * (0.9 * 3.0 + 1.0) + 2.0));
}

TEST_CASE("smoothness inequality on quadratics") {
  Rng rng(34);
  SUBCASE("isotropic quadratics meet it with equality") {
    for (int t = 0; t < 20; ++t) {
      const int n = 1 + static_cast<int>(rng.index(8));
      Quadratic f{rng.uniform(0.1, 10.0) * Eigen::MatrixXd::Identity(n, n),
                  Eigen::VectorXd::Random(n)};
      const SmoothnessReport r = check_smoothness_gap(f, 200, 1 + t);
      CHECK(r.holds());
      CHECK(r.max_equality_error <= 1e-12);
    }
  }
  SUBCASE("anisotropic quadratics satisfy it strictly") {
    const Quadratic f{random_spd(rng, 6), Eigen::VectorXd::Random(6)};
    const SmoothnessReport r = check_smoothness_gap(f, 2000, 9, 3.0);
    CHECK(r.holds());
    CHECK(r.max_ratio <= 1.0 + 1e-12);
    CHECK(r.max_ratio > 0.0);
  }
}

TEST_CASE("local drift stays under its bound on a quadratic toy") {
  Rng rng(35);
  QuadraticToy toy;
  toy.A = random_spd(rng, 4) / 4.0;
  for (int k = 0; k < 5; ++k) toy.centers.push_back(Eigen::VectorXd::Random(4));
  toy.sigma2 = 0.5;
  toy.M = 5;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(toy.A);
  toy.eta = 0.5 / (std::sqrt(2.0) * 5.0 * eig.eigenvalues().maxCoeff());
  toy.w_start = Eigen::VectorXd::Constant(4, 2.0);
  const DriftReport r = check_local_drift(toy, 400, 3);
  CHECK(r.holds());
  CHECK(r.lhs > 0.0);
  CHECK(r.rhs > r.lhs);
}

TEST_CASE("constant estimates on a least-squares problem") {
  Rng rng(36);
  auto data = std::make_shared<Dataset>();
  const std::size_t dim = 4;
  data->feature_dim = dim;
  for (std::size_t i = 0; i < 300; ++i) {
    for (std::size_t j = 0; j < dim; ++j) data->features.push_back(rng.normal() * (1.0 + j));
    data->labels.push_back(0);
    data->targets.push_back(rng.normal());
  }
  // Exact smoothness of the pooled objective: largest eigenvalue of X'X / n.
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> X(
      data->features.data(), 300, dim);
  const Eigen::MatrixXd H = X.transpose() * X / 300.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(H);
  const double L_true = eig.eigenvalues().maxCoeff();

  const LeastSquares model(dim);
  EstimationProblem prob;
  prob.model = &model;
  for (int k = 0; k < 3; ++k) {
    DataShard s;
    s.owner = k;
    s.source = data;
    for (std::size_t i = 0; i < 100; ++i) s.indices.push_back(100 * k + i);
    prob.shards.push_back(s);
  }
  prob.center = ParamVector(dim);
  prob.trainer.learning_rate = 0.01;
  prob.trainer.batch_size = 10;
  const ConstantEstimate est = estimate_constants(prob, 100, 4);
  CHECK(est.constants.L <= L_true * (1 + 1e-6));
  CHECK(est.constants.L >= 0.95 * L_true);
  CHECK(est.constants.zeta >= 0.0);
  CHECK(est.constants.sigma2 > 0.0);
  CHECK(est.constants.vartheta >= 1.0);
  CHECK_THROWS_AS(estimate_constants(prob, 99, 4), ConfigError);
}
