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

// Dense double-precision kernels used by training, aggregation and the
// similarity terms of the power controller.
//
// Every kernel has a scalar reference implementation. Vector variants
// (AVX2+FMA on x86-64, NEON on aarch64) are compiled into separate
// translation units and selected once at startup from CPUID, or forced with
// the PAOTA_KERNELS environment variable ("scalar", "avx2", "neon").
// Within one backend every kernel is deterministic: the reduction order is
// fixed and does not depend on alignment or thread count.

#include <cstddef>
#include <span>
#include <string_view>

namespace paota::kernels {

enum class Backend { kScalar, kAvx2, kNeon };

struct KernelTable {
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // x[i] *= alpha
  void (*scale)(double alpha, double* x, std::size_t n);
  // out[r] = bias[r] + sum_c a[r * cols + c] * x[c]   (row-major a)
  void (*gemv)(const double* a, const double* x, const double* bias, double* out, std::size_t rows,
               std::size_t cols);
  // out[c] = sum_r a[r * cols + c] * x[r]   (transposed product, no bias)
  void (*gemv_t)(const double* a, const double* x, double* out, std::size_t rows, std::size_t cols);
  // a[r * cols + c] += alpha * u[r] * v[c]
  void (*ger)(double alpha, const double* u, const double* v, double* a, std::size_t rows,
              std::size_t cols);
};

const KernelTable& table(Backend backend);
bool available(Backend backend);

// Backend that the span-level wrappers below dispatch to.
Backend active_backend();
void set_active_backend(Backend backend);

std::string_view name(Backend backend);

// RAII override used by tests and benchmarks.
class ScopedBackend {
 public:
  explicit ScopedBackend(Backend backend) : saved_(active_backend()) {
    set_active_backend(backend);
  }
  ~ScopedBackend() { set_active_backend(saved_); }
  ScopedBackend(const ScopedBackend&) = delete;
  ScopedBackend& operator=(const ScopedBackend&) = delete;

 private:
  Backend saved_;
};

const KernelTable& active();

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline void scale(double alpha, std::span<double> x) { active().scale(alpha, x.data(), x.size()); }
inline double squared_norm(std::span<const double> x) { return dot(x, x); }

namespace scalar {
extern const KernelTable kTable;
}
#if defined(PAOTA_HAVE_AVX2)
namespace avx2 {
extern const KernelTable kTable;
}
#endif
#if defined(PAOTA_HAVE_NEON)
namespace neon {
extern const KernelTable kTable;
}
#endif

}  // namespace paota::kernels
