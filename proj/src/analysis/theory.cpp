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

#include "paota/analysis/theory.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "paota/core/errors.hpp"

namespace paota {

std::string TheoryConstants::to_string() const {
  std::ostringstream os;
  os.precision(6);
  os << "L=" << L << " zeta=" << zeta << " sigma2=" << sigma2 << " delta=" << delta
     << " eps=" << eps << " vartheta=" << vartheta << " eta=" << eta << " M=" << M << " K=" << K
     << " d=" << d << " noise_var=" << noise_var;
  return os.str();
}

namespace {

void require_valid(const TheoryConstants& c) {
  if (!c.valid()) {
    throw ValidityError("bound invalid: 1 - 2 eta^2 M^2 L^2 = " + std::to_string(c.denominator()) +
                        " <= 0");
  }
}

}  // namespace

ArResult compute_Ar(const TheoryConstants& c) {
  require_valid(c);
  const double L = c.L, eta = c.eta, M = c.M, v2 = c.vartheta * c.vartheta;
  const double mix = eta * L * L + 4.0 * M * eta * eta * L * L * L;
  const double value = 1.0 + 2.0 * L * c.delta - L * eta * M + 8.0 * L * L * eta * eta * M * v2 +
                       mix * 8.0 * L * eta * eta * M * M * M * v2 / c.denominator();
  return {value, value < 1.0};
}

double g_term_d(const TheoryConstants& c, std::span<const double> alpha) {
  double s = 0.0;
  for (double a : alpha) s += a * a;
  return c.L * c.eps * c.eps * c.K * s;
}

double g_term_e(const TheoryConstants& c, double power_sum) {
  if (!(power_sum > 0.0)) throw ValidityError("noise term undefined without transmit power");
  return 2.0 * c.L * c.d * c.noise_var / (power_sum * power_sum);
}

GrTerms compute_Gr(const TheoryConstants& c, std::span<const double> alpha,
                   std::span<const double> p, std::span<const int> b) {
  require_valid(c);
  if (p.size() != b.size()) throw ConfigError("compute_Gr: size mismatch");
  const double L = c.L, eta = c.eta, M = c.M, den = c.denominator();
  const double mix = eta * L * L + 4.0 * M * eta * eta * L * L * L;
  GrTerms t;
  t.a = (2.0 * eta * M + 8.0 * L * eta * M * M + 4.0 * eta * eta * M * M * M * L * L * mix / den) *
        c.zeta;
  t.b = 2.0 * eta * M * L * L * c.eps * c.eps;
  t.c = (2.0 * eta * eta * L * M * M + mix * eta * eta * M * M * M / den) * c.sigma2;
  t.d = g_term_d(c, alpha);
  double power_sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) power_sum += static_cast<double>(b[k]) * p[k];
  t.e = g_term_e(c, power_sum);
  return t;
}

double bound_recursion(std::span<const double> A, std::span<const double> G, double initial_gap) {
  const std::size_t R = A.size();
  if (G.size() != R) throw ConfigError("bound_recursion: A and G lengths differ");
  if (R == 0) return initial_gap;
  bool positive = true;
  for (double a : A) positive = positive && a > 0.0;

  if (!positive) {
    double total = G[R - 1];
    double suffix = 1.0;
    for (std::size_t r = R - 1; r-- > 0;) {
      suffix *= A[r + 1];
      total += suffix * G[r];
    }
    return total + suffix * A[0] * initial_gap;
  }

  // log of prod_{i=r+1..R} A^i, accumulated from the back.
  double log_suffix = 0.0;
  double total = G[R - 1];
  for (std::size_t r = R - 1; r-- > 0;) {
    log_suffix += std::log(A[r + 1]);
    if (G[r] != 0.0) total += std::copysign(std::exp(log_suffix + std::log(std::abs(G[r]))), G[r]);
  }
  const double log_all = log_suffix + std::log(A[0]);
  if (initial_gap != 0.0) {
    total += std::copysign(std::exp(log_all + std::log(std::abs(initial_gap))), initial_gap);
  }
  return total;
}

}  // namespace paota
