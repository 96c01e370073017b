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

// Uplink over-the-air computation: Rayleigh block fading, channel-inversion
// pre-coding, analog superposition with receiver noise, and normalisation of
// the received sum into a global model.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "paota/core/errors.hpp"
#include "paota/core/param_vector.hpp"

namespace paota {

using Complex = std::complex<double>;

inline constexpr double kDeepFadeGuard = 1e-6;

class DeepFadeError : public Error {
 public:
  explicit DeepFadeError(double magnitude)
      : Error("channel gain " + std::to_string(magnitude) + " below deep-fade guard"),
        magnitude_(magnitude) {}
  double magnitude() const { return magnitude_; }

 private:
  double magnitude_;
};

class NoParticipantError : public Error {
 public:
  NoParticipantError() : Error("normalisation factor is zero: no client transmitted") {}
};

/// sigma_n^2 = B * N0 with N0 given in dBm/Hz.
double noise_variance(double bandwidth_hz, double n0_dbm_hz);

struct ChannelDraw {
  std::vector<Complex> h;  // one gain per client
  double noise_var = 0.0;  // sigma_n^2 (W)
  std::uint64_t seed = 0;
  std::uint64_t round = 0;
};

/// i.i.d. CN(0, 1) gains, deterministic per (seed, round).
ChannelDraw draw_channels(std::size_t K, std::uint64_t seed, std::uint64_t round, double noise_var);

/// phi = b p conj(h) / |h|^2, so that h * phi = b p.
/// Throws DeepFadeError when b = 1 and |h| < kDeepFadeGuard.
Complex precode(int b, double p, Complex h);

struct TransmitPlan {
  std::vector<int> b;
  std::vector<double> p;
  std::vector<Complex> phi;

  std::size_t size() const { return b.size(); }
  // sum_k b_k p_k
  double power_sum() const;
};

/// Pre-codes every client of the draw. Inputs must have the draw's length.
TransmitPlan make_plan(std::span<const int> b, std::span<const double> p, const ChannelDraw& draw);

/// Received signal y = sum_k Re(h_k phi_k) w_k + n with n ~ N(0, noise_var)
/// i.i.d. per coordinate. `locals[k]` may be null for clients with b_k = 0.
ParamVector aircomp_aggregate(const TransmitPlan& plan, std::span<const ParamVector* const> locals,
                              const ChannelDraw& draw, std::uint64_t noise_seed,
                              std::size_t dimension);

struct Normalized {
  ParamVector w;
  std::vector<double> alpha;  // b_k p_k / sum b p
};

/// w = y / sum(b p). Throws NoParticipantError when the sum is zero.
Normalized normalize(const ParamVector& y, std::span<const int> b, std::span<const double> p);

/// |phi|^2 ||w||^2, the per-round transmit energy of one client.
double transmit_energy(Complex phi, const ParamVector& w);

}  // namespace paota
