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

#include "paota/airchannel/channel.hpp"

#include <cmath>

#include "paota/core/random.hpp"

namespace paota {

double noise_variance(double bandwidth_hz, double n0_dbm_hz) {
  return bandwidth_hz * std::pow(10.0, (n0_dbm_hz - 30.0) / 10.0);
}

ChannelDraw draw_channels(std::size_t K, std::uint64_t seed, std::uint64_t round,
                          double noise_var) {
  Rng rng(derive_seed(seed, Stream::kChannel, {round}));
  ChannelDraw draw;
  draw.h.reserve(K);
  const double sd = std::sqrt(0.5);
  for (std::size_t k = 0; k < K; ++k) {
    const double re = sd * rng.normal();
    const double im = sd * rng.normal();
    draw.h.emplace_back(re, im);
  }
  draw.noise_var = noise_var;
  draw.seed = seed;
  draw.round = round;
  return draw;
}

Complex precode(int b, double p, Complex h) {
  if (b == 0) return {0.0, 0.0};
  const double mag = std::abs(h);
  if (mag < kDeepFadeGuard) throw DeepFadeError(mag);
  return (static_cast<double>(b) * p) * std::conj(h) / std::norm(h);
}

double TransmitPlan::power_sum() const {
  double s = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) s += static_cast<double>(b[k]) * p[k];
  return s;
}

TransmitPlan make_plan(std::span<const int> b, std::span<const double> p, const ChannelDraw& draw) {
  if (b.size() != draw.h.size() || p.size() != draw.h.size()) {
    throw ConfigError("make_plan: size mismatch with channel draw");
  }
  TransmitPlan plan;
  plan.b.assign(b.begin(), b.end());
  plan.p.assign(p.begin(), p.end());
  plan.phi.reserve(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) plan.phi.push_back(precode(b[k], p[k], draw.h[k]));
  return plan;
}

ParamVector aircomp_aggregate(const TransmitPlan& plan, std::span<const ParamVector* const> locals,
                              const ChannelDraw& draw, std::uint64_t noise_seed,
                              std::size_t dimension) {
  if (locals.size() != plan.size() || draw.h.size() != plan.size()) {
    throw ConfigError("aircomp_aggregate: size mismatch");
  }
  ParamVector y(dimension);
  for (std::size_t k = 0; k < plan.size(); ++k) {
    if (plan.b[k] == 0) continue;
    const ParamVector* w = locals[k];
    if (w == nullptr || w->size() != dimension) {
      throw ConfigError("aircomp_aggregate: missing or mis-sized local model");
    }
    // The phase of h * phi is zero by construction; its real part is the
    // received amplitude of this client's signal.
    const double gain = (draw.h[k] * plan.phi[k]).real();
    y.add_scaled(gain, *w);
  }
  if (draw.noise_var > 0.0) {
    Rng rng(noise_seed);
    const double sd = std::sqrt(draw.noise_var);
    for (std::size_t i = 0; i < dimension; ++i) y[i] += sd * rng.normal();
  }
  return y;
}

Normalized normalize(const ParamVector& y, std::span<const int> b, std::span<const double> p) {
  if (b.size() != p.size()) throw ConfigError("normalize: size mismatch");
  double sum = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) sum += static_cast<double>(b[k]) * p[k];
  if (!(sum > 0.0)) throw NoParticipantError();
  Normalized out;
  out.w = y;
  kernels::scale(1.0 / sum, out.w.span());
  out.alpha.resize(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) out.alpha[k] = static_cast<double>(b[k]) * p[k] / sum;
  return out;
}

double transmit_energy(Complex phi, const ParamVector& w) {
  return std::norm(phi) * w.squared_norm();
}

}  // namespace paota
