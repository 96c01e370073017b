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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "paota/core/dataset.hpp"
#include "paota/core/param_vector.hpp"

namespace paota {

/// A differentiable empirical loss l(w; sample) over a flat parameter vector.
class Model {
 public:
  virtual ~Model() = default;

  virtual std::size_t dimension() const = 0;

  /// Mean loss over `rows` of `data`. When `grad` is non-empty it receives
  /// the mean gradient (overwritten, not accumulated).
  virtual double loss_and_gradient(std::span<const double> w, const Dataset& data,
                                   std::span<const std::size_t> rows,
                                   std::span<double> grad) const = 0;

  /// Number of rows whose predicted class matches the label, or nullopt for
  /// models that do not classify.
  virtual std::optional<std::size_t> count_correct(std::span<const double> /*w*/,
                                                   const Dataset& /*data*/,
                                                   std::span<const std::size_t> /*rows*/) const {
    return std::nullopt;
  }

  virtual ParamVector initial_parameters(std::uint64_t seed) const = 0;
};

/// Fully connected ReLU network with softmax cross-entropy output.
///
/// Parameters are laid out layer by layer as [W_l (out x in, row-major), b_l].
/// Initial weights and biases are uniform on (-1/sqrt(fan_in), 1/sqrt(fan_in)).
class Mlp final : public Model {
 public:
  explicit Mlp(std::vector<std::size_t> layer_sizes);

  /// 784 -> 10 -> 10 -> 10, d = 8070.
  static Mlp mnist_default() { return Mlp({784, 10, 10, 10}); }

  std::size_t dimension() const override { return dimension_; }
  const std::vector<std::size_t>& layer_sizes() const { return sizes_; }

  double loss_and_gradient(std::span<const double> w, const Dataset& data,
                           std::span<const std::size_t> rows,
                           std::span<double> grad) const override;

  std::optional<std::size_t> count_correct(std::span<const double> w, const Dataset& data,
                                           std::span<const std::size_t> rows) const override;

  ParamVector initial_parameters(std::uint64_t seed) const override;

  /// Class scores for a single input.
  std::vector<double> logits(std::span<const double> w, std::span<const double> x) const;

 private:
  struct Layer {
    std::size_t in;
    std::size_t out;
    std::size_t weight_offset;
    std::size_t bias_offset;
  };

  std::vector<std::size_t> sizes_;
  std::vector<Layer> layers_;
  std::size_t dimension_ = 0;
  std::size_t max_width_ = 0;
};

/// Least-squares linear regression l(w; x, t) = 0.5 (x.w - t)^2 on the
/// dataset's real targets. Its empirical loss is an exact quadratic, which
/// makes it the toy problem for gradient and bound checks.
class LeastSquares final : public Model {
 public:
  explicit LeastSquares(std::size_t dimension) : dimension_(dimension) {}

  std::size_t dimension() const override { return dimension_; }

  double loss_and_gradient(std::span<const double> w, const Dataset& data,
                           std::span<const std::size_t> rows,
                           std::span<double> grad) const override;

  ParamVector initial_parameters(std::uint64_t seed) const override;

 private:
  std::size_t dimension_;
};

}  // namespace paota
