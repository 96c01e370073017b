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

#include "paota/core/model.hpp"

#include <algorithm>
#include <cmath>

#include "paota/core/errors.hpp"
#include "paota/core/random.hpp"
#include "paota/kernels/kernels.hpp"

namespace paota {

Mlp::Mlp(std::vector<std::size_t> layer_sizes) : sizes_(std::move(layer_sizes)) {
  if (sizes_.size() < 2) throw ConfigError("Mlp: need at least input and output layer");
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    if (sizes_[l] == 0 || sizes_[l + 1] == 0) throw ConfigError("Mlp: empty layer");
    Layer layer{sizes_[l], sizes_[l + 1], offset, offset + sizes_[l] * sizes_[l + 1]};
    offset = layer.bias_offset + layer.out;
    layers_.push_back(layer);
  }
  dimension_ = offset;
  max_width_ = *std::max_element(sizes_.begin(), sizes_.end());
}

ParamVector Mlp::initial_parameters(std::uint64_t seed) const {
  Rng rng(derive_seed(seed, Stream::kInit));
  ParamVector w(dimension_);
  for (const Layer& layer : layers_) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer.in));
    for (std::size_t i = layer.weight_offset; i < layer.bias_offset + layer.out; ++i) {
      w[i] = rng.uniform(-bound, bound);
    }
  }
  return w;
}

namespace {

// Numerically stable log-sum-exp softmax; writes probabilities into `z` and
// returns log(sum exp z).
double softmax_inplace(std::span<double> z) {
  const double zmax = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - zmax);
    sum += v;
  }
  for (double& v : z) v /= sum;
  return zmax + std::log(sum);
}

}  // namespace

std::vector<double> Mlp::logits(std::span<const double> w, std::span<const double> x) const {
  const auto& k = kernels::active();
  std::vector<double> in(x.begin(), x.end());
  std::vector<double> out;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    out.assign(layer.out, 0.0);
    k.gemv(w.data() + layer.weight_offset, in.data(), w.data() + layer.bias_offset, out.data(),
           layer.out, layer.in);
    if (l + 1 < layers_.size()) {
      for (double& v : out) v = std::max(v, 0.0);
    }
    in.swap(out);
  }
  return in;
}

double Mlp::loss_and_gradient(std::span<const double> w, const Dataset& data,
                              std::span<const std::size_t> rows, std::span<double> grad) const {
  if (w.size() != dimension_) throw ConfigError("Mlp: parameter dimension mismatch");
  if (data.feature_dim != sizes_.front()) throw DataError("Mlp: feature dimension mismatch");
  if (rows.empty()) throw DataError("Mlp: empty batch");
  const bool want_grad = !grad.empty();
  if (want_grad) {
    if (grad.size() != dimension_) throw ConfigError("Mlp: gradient dimension mismatch");
    std::fill(grad.begin(), grad.end(), 0.0);
  }

  const auto& k = kernels::active();
  const std::size_t depth = layers_.size();
  // acts[0] is the input; acts[l + 1] the (post-ReLU) output of layer l.
  std::vector<std::vector<double>> acts(depth + 1);
  for (std::size_t l = 0; l < depth; ++l) acts[l + 1].resize(layers_[l].out);
  std::vector<double> delta(max_width_);
  std::vector<double> back(max_width_);

  const std::size_t classes = sizes_.back();
  double total = 0.0;
  for (std::size_t row : rows) {
    const auto x = data.row(row);
    const int label = data.labels[row];
    if (label < 0 || static_cast<std::size_t>(label) >= classes) {
      throw DataError("Mlp: label out of range");
    }
    acts[0].assign(x.begin(), x.end());
    for (std::size_t l = 0; l < depth; ++l) {
      const Layer& layer = layers_[l];
      k.gemv(w.data() + layer.weight_offset, acts[l].data(), w.data() + layer.bias_offset,
             acts[l + 1].data(), layer.out, layer.in);
      if (l + 1 < depth) {
        for (double& v : acts[l + 1]) v = std::max(v, 0.0);
      }
    }
    std::span<double> z(acts[depth]);
    const double z_label = z[static_cast<std::size_t>(label)];
    total += softmax_inplace(z) - z_label;
    if (!want_grad) continue;

    // dL/dz = softmax - onehot
    std::copy(z.begin(), z.end(), delta.begin());
    delta[static_cast<std::size_t>(label)] -= 1.0;
    for (std::size_t l = depth; l-- > 0;) {
      const Layer& layer = layers_[l];
      k.ger(1.0, delta.data(), acts[l].data(), grad.data() + layer.weight_offset, layer.out,
            layer.in);
      k.axpy(1.0, delta.data(), grad.data() + layer.bias_offset, layer.out);
      if (l == 0) break;
      k.gemv_t(w.data() + layer.weight_offset, delta.data(), back.data(), layer.out, layer.in);
      for (std::size_t i = 0; i < layer.in; ++i) delta[i] = acts[l][i] > 0.0 ? back[i] : 0.0;
    }
  }
  const double inv = 1.0 / static_cast<double>(rows.size());
  if (want_grad) k.scale(inv, grad.data(), grad.size());
  return total * inv;
}

std::optional<std::size_t> Mlp::count_correct(std::span<const double> w, const Dataset& data,
                                              std::span<const std::size_t> rows) const {
  std::size_t correct = 0;
  for (std::size_t row : rows) {
    const auto z = logits(w, data.row(row));
    const auto best = static_cast<int>(std::max_element(z.begin(), z.end()) - z.begin());
    if (best == data.labels[row]) ++correct;
  }
  return correct;
}

double LeastSquares::loss_and_gradient(std::span<const double> w, const Dataset& data,
                                       std::span<const std::size_t> rows,
                                       std::span<double> grad) const {
  if (w.size() != dimension_ || data.feature_dim != dimension_) {
    throw ConfigError("LeastSquares: dimension mismatch");
  }
  if (data.targets.size() != data.size()) throw DataError("LeastSquares: dataset has no targets");
  if (rows.empty()) throw DataError("LeastSquares: empty batch");
  const bool want_grad = !grad.empty();
  if (want_grad) std::fill(grad.begin(), grad.end(), 0.0);
  const auto& k = kernels::active();
  double total = 0.0;
  for (std::size_t row : rows) {
    const auto x = data.row(row);
    const double r = k.dot(x.data(), w.data(), dimension_) - data.targets[row];
    total += 0.5 * r * r;
    if (want_grad) k.axpy(r, x.data(), grad.data(), dimension_);
  }
  const double inv = 1.0 / static_cast<double>(rows.size());
  if (want_grad) k.scale(inv, grad.data(), grad.size());
  return total * inv;
}

ParamVector LeastSquares::initial_parameters(std::uint64_t seed) const {
  Rng rng(derive_seed(seed, Stream::kInit));
  ParamVector w(dimension_);
  for (std::size_t i = 0; i < dimension_; ++i) w[i] = rng.normal();
  return w;
}

}  // namespace paota
