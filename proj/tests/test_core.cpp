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

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <set>

#include "paota/core/dataset.hpp"
#include "paota/core/errors.hpp"
#include "paota/core/metrics.hpp"
#include "paota/core/model.hpp"
#include "paota/core/random.hpp"
#include "paota/core/trainer.hpp"

using namespace paota;

namespace {

std::shared_ptr<const Dataset> small_blobs(std::size_t n = 400, std::size_t dim = 12,
                                           int classes = 4) {
  BlobSpec spec;
  spec.samples = n;
  spec.feature_dim = dim;
  spec.num_classes = classes;
  return std::make_shared<const Dataset>(make_gaussian_blobs(spec, 3));
}

Dataset regression_data(std::size_t n, std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  Dataset d;
  d.feature_dim = dim;
  for (std::size_t i = 0; i < n; ++i) {
    double t = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double x = rng.normal();
      d.features.push_back(x);
      t += (static_cast<double>(j) + 1.0) * x;
    }
    d.labels.push_back(0);
    d.targets.push_back(t + 0.1 * rng.normal());
  }
  return d;
}

}  // namespace

TEST_CASE("seed derivation is deterministic and key sensitive") {
  CHECK(derive_seed(7, Stream::kChannel, {3}) == derive_seed(7, Stream::kChannel, {3}));
  CHECK(derive_seed(7, Stream::kChannel, {3}) != derive_seed(7, Stream::kChannel, {4}));
  CHECK(derive_seed(7, Stream::kChannel, {3}) != derive_seed(7, Stream::kNoise, {3}));
  CHECK(derive_seed(7, Stream::kChannel, {1, 2}) != derive_seed(7, Stream::kChannel, {2, 1}));
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());
}

TEST_CASE("rng draws have the advertised ranges and moments") {
  Rng rng(1);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sq / n - 1.0) < 0.015);

  const auto pick = rng.sample_without_replacement(50, 20);
  CHECK(std::set<std::size_t>(pick.begin(), pick.end()).size() == 20);
  CHECK(*std::max_element(pick.begin(), pick.end()) < 50);
  CHECK_THROWS(rng.sample_without_replacement(3, 4));
}

TEST_CASE("MNIST subset loads with expected shape") {
  const std::string dir = std::string(PAOTA_SOURCE_DIR) + "/data/mnist/";
  const Dataset d =
      load_idx(dir + "train-images-idx3-ubyte.gz", dir + "train-labels-idx1-ubyte.gz", 500);
  CHECK(d.size() == 500);
  CHECK(d.feature_dim == 784);
  CHECK(d.num_classes == 10);
  const auto [lo, hi] = std::minmax_element(d.features.begin(), d.features.end());
  CHECK(*lo == 0.0);
  CHECK(*hi <= 1.0);
  CHECK_THROWS_AS(load_idx(dir + "missing.gz", dir + "missing.gz"), DataError);
  CHECK_THROWS_AS(load_idx(dir + "train-labels-idx1-ubyte.gz", dir + "train-labels-idx1-ubyte.gz"),
                  DataError);
}

TEST_CASE("non-IID partition respects sizes and label budget") {
  const auto data = small_blobs(3000, 8, 10);
  const std::vector<std::size_t> pool = {100, 200, 300};
  for (PartitionMode mode : {PartitionMode::kIndependent, PartitionMode::kDisjoint}) {
    const auto shards = partition_non_iid(data, 6, pool, 3, 42, mode);
    REQUIRE(shards.size() == 6);
    std::vector<std::size_t> seen;
    for (const DataShard& s : shards) {
      CHECK(std::find(pool.begin(), pool.end(), s.size()) != pool.end());
      CHECK(s.label_set().size() <= 3);
      CHECK(std::is_sorted(s.indices.begin(), s.indices.end()));
      CHECK(std::adjacent_find(s.indices.begin(), s.indices.end()) == s.indices.end());
      seen.insert(seen.end(), s.indices.begin(), s.indices.end());
    }
    if (mode == PartitionMode::kDisjoint) {
      std::sort(seen.begin(), seen.end());
      CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
    }
    const auto again = partition_non_iid(data, 6, pool, 3, 42, mode);
    for (std::size_t k = 0; k < 6; ++k) CHECK(again[k].indices == shards[k].indices);
  }
  const std::vector<std::size_t> huge = {5000};
  CHECK_THROWS_AS(partition_non_iid(data, 2, huge, 2, 1, PartitionMode::kDisjoint), CapacityError);
}

TEST_CASE("MLP gradient matches central finite differences") {
  const auto data = small_blobs(40, 6, 3);
  const Mlp net({6, 5, 4, 3});
  ParamVector w = net.initial_parameters(8);
  const auto rows = data->all_rows();
  std::vector<double> grad(net.dimension());
  net.loss_and_gradient(w.span(), *data, rows, grad);
  const double h = 1e-6;
  double worst = 0.0;
  for (std::size_t i = 0; i < net.dimension(); ++i) {
    const double keep = w[i];
    w[i] = keep + h;
    const double fp = net.loss_and_gradient(w.span(), *data, rows, {});
    w[i] = keep - h;
    const double fm = net.loss_and_gradient(w.span(), *data, rows, {});
    w[i] = keep;
    worst = std::max(worst, std::abs((fp - fm) / (2 * h) - grad[i]));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("MNIST network has the expected dimension") {
  CHECK(Mlp::mnist_default().dimension() == 784 * 10 + 10 + 10 * 10 + 10 + 10 * 10 + 10);
}

TEST_CASE("least-squares gradient has the closed form X'(Xw - t)/n") {
  const Dataset d = regression_data(30, 4, 2);
  const LeastSquares model(4);
  const ParamVector w{0.5, -1.0, 2.0, 0.25};
  const auto rows = d.all_rows();
  std::vector<double> grad(4);
  const double loss = model.loss_and_gradient(w.span(), d, rows, grad);
  std::vector<double> expect(4, 0.0);
  double expect_loss = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double r = -d.targets[i];
    for (std::size_t j = 0; j < 4; ++j) r += d.features[i * 4 + j] * w[j];
    expect_loss += 0.5 * r * r / 30.0;
    for (std::size_t j = 0; j < 4; ++j) expect[j] += r * d.features[i * 4 + j] / 30.0;
  }
  CHECK(loss == doctest::Approx(expect_loss).epsilon(1e-13));
  for (std::size_t j = 0; j < 4; ++j) CHECK(grad[j] == doctest::Approx(expect[j]).epsilon(1e-12));
}

TEST_CASE("local training is deterministic and reports the exact update") {
  const auto data = small_blobs();
  const auto shards =
      partition_non_iid(data, 2, std::vector<std::size_t>{150}, 2, 5, PartitionMode::kIndependent);
  const Mlp net({12, 6, 4});
  const ParamVector w0 = net.initial_parameters(1);
  TrainerConfig cfg;
  cfg.seed = 17;
  const LocalResult a = local_train(net, w0, shards[0], cfg);
  const LocalResult b = local_train(net, w0, shards[0], cfg);
  CHECK(a.w_local == b.w_local);
  CHECK(a.w_local == w0 + a.delta);
  cfg.seed = 18;
  CHECK_FALSE(local_train(net, w0, shards[0], cfg).w_local == a.w_local);
}

TEST_CASE("full-batch local training equals hand-rolled gradient descent") {
  const Dataset d = regression_data(25, 3, 4);
  const LeastSquares model(3);
  const ParamVector w0{0.0, 0.0, 0.0};
  TrainerConfig cfg;
  cfg.local_rounds = 4;
  cfg.learning_rate = 0.1;
  cfg.batch_size = 1000;
  const auto rows = d.all_rows();
  const LocalResult r = local_train(model, w0, d, rows, cfg);
  std::vector<double> w(3, 0.0);
  for (int step = 0; step < 4; ++step) {
    std::vector<double> g(3, 0.0);
    for (std::size_t i = 0; i < d.size(); ++i) {
      double res = -d.targets[i];
      for (std::size_t j = 0; j < 3; ++j) res += d.features[i * 3 + j] * w[j];
      for (std::size_t j = 0; j < 3; ++j) g[j] += res * d.features[i * 3 + j] / 25.0;
    }
    for (std::size_t j = 0; j < 3; ++j) w[j] -= 0.1 * g[j];
  }
  for (std::size_t j = 0; j < 3; ++j) CHECK(r.w_local[j] == doctest::Approx(w[j]).epsilon(1e-12));
}

TEST_CASE("divergent training raises DivergenceError") {
  const Dataset d = regression_data(20, 3, 9);
  const LeastSquares model(3);
  TrainerConfig cfg;
  cfg.local_rounds = 2000;
  cfg.learning_rate = 10.0;
  cfg.batch_size = 1000;
  CHECK_THROWS_AS(local_train(model, ParamVector{1.0, 1.0, 1.0}, d, d.all_rows(), cfg),
                  DivergenceError);
}

TEST_CASE("global loss over shards is the size-weighted mean of shard losses") {
  const auto data = small_blobs();
  const auto shards = partition_non_iid(data, 3, std::vector<std::size_t>{50, 120}, 2, 6,
                                        PartitionMode::kIndependent);
  const Mlp net({12, 6, 4});
  const ParamVector w = net.initial_parameters(3);
  double weighted = 0.0, total = 0.0;
  for (const DataShard& s : shards) {
    weighted += static_cast<double>(s.size()) * evaluate(net, w, s).loss;
    total += static_cast<double>(s.size());
  }
  const Evaluation all = evaluate(net, w, shards);
  CHECK(all.loss == doctest::Approx(weighted / total).epsilon(1e-12));
  CHECK(all.samples == static_cast<std::size_t>(total));
  CHECK(all.accuracy >= 0.0);
  CHECK(all.accuracy <= 1.0);
}

TEST_CASE("cosine guard and clamping") {
  CHECK(cosine(ParamVector{0.0, 0.0}, ParamVector{1.0, 0.0}) == 0.0);
  CHECK(cosine(ParamVector{1e-13, 0.0}, ParamVector{1.0, 0.0}) == 0.0);
  CHECK(cosine(ParamVector{2.0, 0.0}, ParamVector{3.0, 0.0}) == doctest::Approx(1.0));
  CHECK(cosine(ParamVector{1.0, 0.0}, ParamVector{0.0, 1.0}) == doctest::Approx(0.0));
  const double c = cosine(ParamVector{1.0, 1e-9}, ParamVector{1.0, 1e-9});
  CHECK(c <= 1.0);
}
