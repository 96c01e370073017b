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

#include <cmath>
#include <vector>

#include "paota/core/random.hpp"
#include "paota/kernels/kernels.hpp"

using namespace paota;
using kernels::Backend;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

double max_rel(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
  }
  return worst;
}

std::vector<Backend> vector_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::kAvx2, Backend::kNeon}) {
    if (kernels::available(b)) out.push_back(b);
  }
  return out;
}

}  // namespace

TEST_CASE("scalar kernels against naive loops") {
  Rng rng(11);
  const auto& k = kernels::table(Backend::kScalar);
  const std::size_t rows = 7, cols = 13;
  const auto a = random_vec(rng, rows * cols);
  const auto x = random_vec(rng, cols);
  const auto u = random_vec(rng, rows);
  const auto bias = random_vec(rng, rows);

  std::vector<double> out(rows);
  k.gemv(a.data(), x.data(), bias.data(), out.data(), rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    double s = bias[r];
    for (std::size_t c = 0; c < cols; ++c) s += a[r * cols + c] * x[c];
    CHECK(out[r] == doctest::Approx(s).epsilon(1e-14));
  }

  std::vector<double> back(cols);
  k.gemv_t(a.data(), u.data(), back.data(), rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < rows; ++r) s += a[r * cols + c] * u[r];
    CHECK(back[c] == doctest::Approx(s).epsilon(1e-14));
  }

  auto m = a;
  k.ger(0.5, u.data(), x.data(), m.data(), rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      CHECK(m[r * cols + c] == doctest::Approx(a[r * cols + c] + 0.5 * u[r] * x[c]));
    }
  }
}

TEST_CASE("vector kernels match scalar reference") {
  const auto backends = vector_backends();
  if (backends.empty()) {
    MESSAGE("no vector backend on this CPU; scalar only");
    return;
  }
  const auto& ref = kernels::table(Backend::kScalar);
  Rng rng(5);
  for (Backend b : backends) {
    CAPTURE(kernels::name(b));
    const auto& k = kernels::table(b);
    // Sizes straddle the vector width so remainder loops are exercised.
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 15u, 16u, 17u, 33u, 784u, 1001u}) {
      CAPTURE(n);
      const auto x = random_vec(rng, n);
      const auto y = random_vec(rng, n);
      const double d_ref = ref.dot(x.data(), y.data(), n);
      CHECK(std::abs(k.dot(x.data(), y.data(), n) - d_ref) <=
            1e-12 * std::max(1.0, std::abs(d_ref)) * std::sqrt(n + 1.0));

      auto y1 = y, y2 = y;
      ref.axpy(-0.7, x.data(), y1.data(), n);
      k.axpy(-0.7, x.data(), y2.data(), n);
      CHECK(max_rel(y2, y1) <= 1e-15);

      auto s1 = x, s2 = x;
      ref.scale(1.3, s1.data(), n);
      k.scale(1.3, s2.data(), n);
      CHECK(max_rel(s2, s1) == 0.0);
    }
    for (auto [rows, cols] :
         {std::pair<std::size_t, std::size_t>{10, 784}, {10, 10}, {3, 5}, {1, 1}, {7, 9}}) {
      CAPTURE(rows);
      CAPTURE(cols);
      const auto a = random_vec(rng, rows * cols);
      const auto x = random_vec(rng, cols);
      const auto u = random_vec(rng, rows);
      const auto bias = random_vec(rng, rows);
      std::vector<double> o1(rows), o2(rows);
      ref.gemv(a.data(), x.data(), bias.data(), o1.data(), rows, cols);
      k.gemv(a.data(), x.data(), bias.data(), o2.data(), rows, cols);
      CHECK(max_rel(o2, o1) <= 1e-12);

      std::vector<double> t1(cols), t2(cols);
      ref.gemv_t(a.data(), u.data(), t1.data(), rows, cols);
      k.gemv_t(a.data(), u.data(), t2.data(), rows, cols);
      CHECK(max_rel(t2, t1) <= 1e-12);

      auto m1 = a, m2 = a;
      ref.ger(0.25, u.data(), x.data(), m1.data(), rows, cols);
      k.ger(0.25, u.data(), x.data(), m2.data(), rows, cols);
      CHECK(max_rel(m2, m1) <= 1e-15);
    }
  }
}

TEST_CASE("scoped backend override restores the previous selection") {
  const Backend before = kernels::active_backend();
  {
    kernels::ScopedBackend scalar(Backend::kScalar);
    CHECK(kernels::active_backend() == Backend::kScalar);
    CHECK(&kernels::active() == &kernels::table(Backend::kScalar));
  }
  CHECK(kernels::active_backend() == before);
}
