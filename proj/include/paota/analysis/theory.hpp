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

// Per-round contraction factor A^r and additive error G^r of the
// convergence bound, and the resulting bound recursion.

#include <cstddef>
#include <span>
#include <string>

namespace paota {

struct TheoryConstants {
  double L = 10.0;        // smoothness
  double zeta = 0.0;      // gradient heterogeneity
  double sigma2 = 0.0;    // mini-batch gradient variance
  double delta = 0.0;     // staleness drift along the gradient
  double eps = 1.0;       // staleness drift in norm
  double vartheta = 1.0;  // gradient growth across stale rounds
  double eta = 0.01;
  double M = 5.0;
  double K = 10.0;
  double d = 8070.0;
  double noise_var = 0.0;  // sigma_n^2

  // 1 - 2 eta^2 M^2 L^2
  double denominator() const { return 1.0 - 2.0 * eta * eta * M * M * L * L; }
  bool valid() const { return denominator() > 0.0; }
  std::string to_string() const;
};

struct ArResult {
  double value = 0.0;
  bool contraction = false;  // value < 1
};

/// Throws ValidityError when 1 - 2 eta^2 M^2 L^2 <= 0.
ArResult compute_Ar(const TheoryConstants& c);

struct GrTerms {
  double a = 0.0;  // heterogeneity
  double b = 0.0;  // staleness drift
  double c = 0.0;  // SGD variance
  double d = 0.0;  // aggregation weights
  double e = 0.0;  // receiver noise
  double total() const { return a + b + c + d + e; }
};

/// alpha, p and b are per client. Throws ValidityError on an invalid
/// denominator and NoParticipantError-like ValidityError when sum b p = 0.
GrTerms compute_Gr(const TheoryConstants& c, std::span<const double> alpha,
                   std::span<const double> p, std::span<const int> b);

/// Terms (d) and (e) alone; they need none of the step-size constants.
double g_term_d(const TheoryConstants& c, std::span<const double> alpha);
double g_term_e(const TheoryConstants& c, double power_sum);

/// prod_r A^r gap + G^R + sum_{r<R} (prod_{i=r+1..R} A^i) G^r, evaluated in
/// log space when every A is positive.
double bound_recursion(std::span<const double> A, std::span<const double> G, double initial_gap);

}  // namespace paota
