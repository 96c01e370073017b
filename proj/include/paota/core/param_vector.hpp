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

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "paota/kernels/kernels.hpp"

namespace paota {

/// Flat model parameter vector: the unit that is trained, transmitted and
/// aggregated.
class ParamVector {
 public:
  ParamVector() = default;
  explicit ParamVector(std::size_t dimension, double fill = 0.0) : values_(dimension, fill) {}
  explicit ParamVector(std::vector<double> values) : values_(std::move(values)) {}
  ParamVector(std::initializer_list<double> values) : values_(values) {}

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<double> span() { return values_; }
  std::span<const double> span() const { return values_; }
  const std::vector<double>& values() const { return values_; }

  bool all_finite() const {
    for (double v : values_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  double squared_norm() const { return kernels::squared_norm(values_); }
  double norm() const { return std::sqrt(squared_norm()); }

  // this += alpha * other
  void add_scaled(double alpha, const ParamVector& other) {
    kernels::axpy(alpha, other.span(), values_);
  }

  friend bool operator==(const ParamVector&, const ParamVector&) = default;

 private:
  std::vector<double> values_;
};

inline ParamVector operator-(const ParamVector& a, const ParamVector& b) {
  ParamVector out = a;
  out.add_scaled(-1.0, b);
  return out;
}

inline ParamVector operator+(const ParamVector& a, const ParamVector& b) {
  ParamVector out = a;
  out.add_scaled(1.0, b);
  return out;
}

}  // namespace paota
