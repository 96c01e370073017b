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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "paota/kernels/kernels.hpp"

namespace paota::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(PAOTA_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported;
#else
  return false;
#endif
}

Backend detect() {
  if (const char* forced = std::getenv("PAOTA_KERNELS")) {
    const std::string value(forced);
    if (value == "scalar") return Backend::kScalar;
    if (value == "avx2" && available(Backend::kAvx2)) return Backend::kAvx2;
    if (value == "neon" && available(Backend::kNeon)) return Backend::kNeon;
  }
  if (available(Backend::kAvx2)) return Backend::kAvx2;
  if (available(Backend::kNeon)) return Backend::kNeon;
  return Backend::kScalar;
}

struct ActiveState {
  std::atomic<Backend> backend;
  std::atomic<const KernelTable*> kernels;
};

ActiveState& current() {
  static ActiveState state{detect(), nullptr};
  static const bool init = [] {
    state.kernels.store(&table(state.backend.load()));
    return true;
  }();
  (void)init;
  return state;
}

}  // namespace

bool available(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
      return cpu_has_avx2();
    case Backend::kNeon:
#if defined(PAOTA_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Backend backend) {
  if (!available(backend)) {
    throw std::invalid_argument("kernel backend not available: " + std::string(name(backend)));
  }
  switch (backend) {
#if defined(PAOTA_HAVE_AVX2)
    case Backend::kAvx2:
      return avx2::kTable;
#endif
#if defined(PAOTA_HAVE_NEON)
    case Backend::kNeon:
      return neon::kTable;
#endif
    default:
      return scalar::kTable;
  }
}

Backend active_backend() { return current().backend.load(std::memory_order_relaxed); }

void set_active_backend(Backend backend) {
  if (!available(backend)) {
    throw std::invalid_argument("kernel backend not available: " + std::string(name(backend)));
  }
  ActiveState& state = current();
  state.kernels.store(&table(backend), std::memory_order_relaxed);
  state.backend.store(backend, std::memory_order_relaxed);
}

const KernelTable& active() { return *current().kernels.load(std::memory_order_relaxed); }

std::string_view name(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
    case Backend::kNeon:
      return "neon";
  }
  return "unknown";
}

}  // namespace paota::kernels
