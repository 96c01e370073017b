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

// Acceptance suite. `acceptance N` runs criterion N; no argument runs all.
// Each criterion prints one PASS/FAIL line; diagnostics go on indented lines.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "paota/airchannel/channel.hpp"
#include "paota/analysis/inequalities.hpp"
#include "paota/analysis/theory.hpp"
#include "paota/bench/config.hpp"
#include "paota/bench/experiment.hpp"
#include "paota/bench/output.hpp"
#include "paota/core/random.hpp"
#include "paota/powerctl/brute_force.hpp"
#include "paota/powerctl/dinkelbach.hpp"
#include "paota/powerctl/pla_mip.hpp"
#include "paota/powerctl/transform.hpp"
#include "paota/scheduler/engine.hpp"

namespace {

using namespace paota;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using paota::testing::random_fqp;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void note(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
void note(const char* fmt, ...) {
  std::printf("    ");
  va_list args;
  va_start(args, fmt);
  std::vprintf(fmt, args);
  va_end(args);
  std::printf("\n");
}

ExperimentConfig desk_config() {
  const std::string root = PAOTA_SOURCE_DIR;
  ExperimentConfig cfg = load_config(root + "/configs/desk.cfg");
  cfg.data_dir = root + "/data/mnist";
  return cfg;
}

// 1. sigma_n^2 = 0: normalised AirComp output equals sum_k alpha_k w_k.
bool noiseless_exactness() {
  Rng rng(101);
  double worst = 0.0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    const std::size_t K = 1 + rng.index(12);
    const std::size_t d = 1 + rng.index(300);
    const ChannelDraw draw = draw_channels(K, 1000 + t, 1, 0.0);
    std::vector<int> b(K);
    std::vector<double> p(K);
    std::vector<ParamVector> w(K, ParamVector(d));
    std::vector<const ParamVector*> locals(K, nullptr);
    bool any = false;
    for (std::size_t k = 0; k < K; ++k) {
      b[k] = (rng.uniform() < 0.7 && std::abs(draw.h[k]) >= kDeepFadeGuard) ? 1 : 0;
      p[k] = b[k] ? rng.uniform(0.01, 15.0) : 0.0;
      for (std::size_t i = 0; i < d; ++i) w[k][i] = rng.normal(0.0, 3.0);
      if (b[k]) {
        locals[k] = &w[k];
        any = true;
      }
    }
    if (!any) continue;
    const TransmitPlan plan = make_plan(b, p, draw);
    const Normalized out = normalize(aircomp_aggregate(plan, locals, draw, 7, d), b, p);
    // Reference: sum of b p w divided by sum of b p, no channel in the loop.
    double sum_p = 0.0;
    for (std::size_t k = 0; k < K; ++k) sum_p += b[k] * p[k];
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      double ref = 0.0;
      for (std::size_t k = 0; k < K; ++k) ref += (b[k] * p[k] / sum_p) * w[k][i];
      num += (out.w[i] - ref) * (out.w[i] - ref);
      den += ref * ref;
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  note("max relative error %.3g over %d aggregations (tolerance 1e-9)", worst, trials);
  return worst <= 1e-9;
}

// 2. Dinkelbach (64 segments) within 2% of the 0.02 grid optimum, n in {2, 3}.
bool optimizer_vs_oracle() {
  const auto t0 = Clock::now();
  Rng rng(202);
  int within = 0;
  double worst = -1.0;
  PlaConfig pla;
  pla.segments = 64;
  for (int t = 0; t < 50; ++t) {
    const FractionalQP f = random_fqp(rng, 2 + static_cast<std::size_t>(t % 2));
    const DinkelbachResult r = dinkelbach_solve(f, 1e-6, pla);
    const GridResult g = brute_force_beta(f, 0.02);
    const double rel = (r.objective - g.objective) / g.objective;
    worst = std::max(worst, rel);
    if (rel <= 0.02) ++within;
  }
  const double elapsed = seconds_since(t0);
  note("%d/50 within 2%%; worst relative excess %.3g; %.1f s (limit 120 s)", within, worst,
       elapsed);
  return within == 50 && elapsed < 120.0;
}

// 3. Lambda never decreases; F <= 1e-6 within 20 iterations on >= 95%.
bool dinkelbach_behavior() {
  Rng rng(303);
  const int trials = 200;
  int monotone = 0, converged = 0;
  std::size_t max_iter = 0;
  for (int t = 0; t < trials; ++t) {
    const FractionalQP f = random_fqp(rng, 1 + rng.index(5));
    DinkelbachTrace trace;
    bool ok = true;
    try {
      trace = dinkelbach_solve(f, 1e-6, {}, 20).trace;
    } catch (const NonConvergenceError& e) {
      trace = e.trace();
      ok = false;
    }
    bool mono = true;
    for (std::size_t i = 1; i < trace.iterates.size(); ++i) {
      mono = mono && trace.iterates[i].lambda >= trace.iterates[i - 1].lambda;
    }
    monotone += mono;
    if (ok && trace.iterates.back().F <= 1e-6) ++converged;
    max_iter = std::max(max_iter, trace.iterates.size());
  }
  const double rate = static_cast<double>(converged) / trials;
  note("monotone %d/%d; converged within 20 iterations %d/%d (%.1f%%, need 95%%); max %zu",
       monotone, trials, converged, trials, 100.0 * rate, max_iter);
  return monotone == trials && rate >= 0.95;
}

// 4. Branch-and-bound optimum ties with exhaustive enumeration, n <= 3, segments <= 8.
bool mip_exactness() {
  Rng rng(404);
  int tested = 0, tied = 0, bitwise = 0;
  double worst = 0.0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng.index(3);
    const std::size_t seg = 1 + rng.index(8);
    const FractionalQP f = random_fqp(rng, n);
    const EigenTransform tr = eigen_transform(f);
    // Spread lambda around the ratio so both concave and convex dimensions occur.
    const double lambda = rng.uniform(0.1, 2.0) / f.ratio(VectorXd::Constant(n, 0.5));
    const PlaMip mip = build_pla_mip(f, tr, lambda, seg);
    const PlaSolution bb = pla_mip_solve(mip, MipMethod::kBranchAndBound);
    const PlaSolution en = pla_mip_solve(mip, MipMethod::kEnumerate);
    ++tested;
    const bool same_assignment = bb.segment == en.segment;
    const double rel = std::abs(bb.value - en.value) / std::max(1.0, std::abs(en.value));
    worst = std::max(worst, rel);
    // The same assignment yields the same leaf LP, so values must agree bit for bit;
    // alternative optimal assignments may differ only by rounding.
    if (same_assignment ? bb.value == en.value : rel <= 1e-12) ++tied;
    if (bb.value == en.value) ++bitwise;
  }
  note("%d/%d tied (%d bitwise); worst relative gap %.3g", tied, tested, bitwise, worst);
  return tied == tested;
}

// 5. Transform identities.
bool transform_identities() {
  Rng rng(505);
  double recon = 0.0, ortho = 0.0, trip = 0.0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng.index(6);
    const FractionalQP f = random_fqp(rng, n);
    const EigenTransform tr = eigen_transform(f);
    const MatrixXd G_rec = tr.M.transpose() * tr.M;
    const MatrixXd Q_rec = tr.M.transpose() * tr.N.asDiagonal() * tr.M;
    recon = std::max(recon, (G_rec - f.G).norm() / f.G.norm());
    recon = std::max(recon, (Q_rec - f.Q).norm() / f.Q.norm());
    const auto I = MatrixXd::Identity(tr.M2.rows(), tr.M2.cols());
    ortho = std::max(ortho, (tr.M2.transpose() * tr.M2 - I).cwiseAbs().maxCoeff());
    for (int s = 0; s < 20; ++s) {
      VectorXd beta(static_cast<Eigen::Index>(n));
      for (Eigen::Index i = 0; i < beta.size(); ++i) beta[i] = rng.uniform();
      trip = std::max(trip, (tr.to_beta(tr.to_z(beta)) - beta).cwiseAbs().maxCoeff());
    }
  }
  note("reconstruction %.3g (<= 1e-8), orthogonality %.3g (<= 1e-10), round trip %.3g (<= 1e-10)",
       recon, ortho, trip);
  return recon <= 1e-8 && ortho <= 1e-10 && trip <= 1e-10;
}

// 6. Smoothness inequality: equality on isotropic quadratics, no violations in 1e4 probes.
bool smoothness_checks() {
  Rng rng(606);
  double eq_err = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int n = 1 + static_cast<int>(rng.index(10));
    VectorXd b(n);
    for (int i = 0; i < n; ++i) b[i] = rng.normal();
    const Quadratic f{rng.uniform(0.1, 20.0) * MatrixXd::Identity(n, n), b};
    eq_err = std::max(eq_err, check_smoothness_gap(f, 100, 10 + t).max_equality_error);
  }
  std::size_t probes = 0, violations = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng.index(10));
    MatrixXd X(n, n);
    VectorXd b(n);
    for (int i = 0; i < n; ++i) {
      b[i] = rng.normal();
      for (int j = 0; j < n; ++j) X(i, j) = rng.normal();
    }
    const Quadratic f{X * X.transpose() + 1e-3 * MatrixXd::Identity(n, n), b};
    const SmoothnessReport r = check_smoothness_gap(f, 100, 1000 + t, rng.uniform(0.1, 10.0));
    probes += r.samples;
    violations += r.violations;
  }
  note("isotropic equality error %.3g (<= 1e-12); %zu violations in %zu probes", eq_err, violations,
       probes);
  return eq_err <= 1e-12 && violations == 0 && probes >= 10000;
}

// 7. Contraction and error-floor evaluators against independent formulas.
bool theory_evaluators() {
  Rng rng(707);
  double worst = 0.0;
  bool scaling_exact = true;
  for (int t = 0; t < 100; ++t) {
    TheoryConstants c;
    c.L = rng.uniform(0.5, 10.0);
    c.M = static_cast<double>(1 + rng.index(6));
    c.eta = rng.uniform(0.01, 0.95) / (std::sqrt(2.0) * c.M * c.L);
    c.zeta = rng.uniform(0, 5);
    c.sigma2 = rng.uniform(0, 5);
    c.delta = rng.uniform(-0.5, 0.5);
    c.eps = rng.uniform(0.1, 2);
    c.vartheta = rng.uniform(1, 3);
    c.K = static_cast<double>(1 + rng.index(100));
    c.d = static_cast<double>(1 + rng.index(10000));
    c.noise_var = std::pow(10.0, rng.uniform(-14, -2));
    const std::size_t K = 1 + rng.index(8);
    std::vector<double> p(K), alpha(K);
    std::vector<int> b(K, 1);
    double sp = 0.0;
    for (double& x : p) sp += (x = rng.uniform(0.1, 15));
    for (std::size_t k = 0; k < K; ++k) alpha[k] = p[k] / sp;

    // Expanded polynomial forms.
    const double L = c.L, e = c.eta, M = c.M, v2 = c.vartheta * c.vartheta;
    const double den = 1 - 2 * e * e * M * M * L * L;
    const double A = 1 + 2 * L * c.delta - L * e * M + 8 * L * L * e * e * M * v2 +
                     (8 * std::pow(L * e * M, 3) + 32 * std::pow(L * e * M, 4)) * v2 / den;
    double sq = 0.0;
    for (double a : alpha) sq += a * a;
    const double G =
        (2 * e * M + 8 * L * e * M * M +
         (4 * std::pow(e * M, 3) * std::pow(L, 4) + 16 * std::pow(e * M, 4) * std::pow(L, 5)) /
             den) *
            c.zeta +
        2 * e * M * L * L * c.eps * c.eps +
        (2 * e * e * L * M * M +
         (std::pow(e * M, 3) * L * L + 4 * std::pow(e * M, 4) * std::pow(L, 3)) / den) *
            c.sigma2 +
        L * c.eps * c.eps * c.K * sq + 2 * L * c.d * c.noise_var / (sp * sp);
    worst = std::max(worst, std::abs(compute_Ar(c).value - A) / std::max(1.0, std::abs(A)));
    worst = std::max(worst, std::abs(compute_Gr(c, alpha, p, b).total() - G) / std::max(1.0, G));
    scaling_exact = scaling_exact && g_term_e(c, sp) == 4.0 * g_term_e(c, 2.0 * sp);
  }
  note("max relative difference %.3g (<= 1e-12); noise term 1/(sum p)^2 scaling %s", worst,
       scaling_exact ? "exact" : "inexact");
  return worst <= 1e-12 && scaling_exact;
}

struct SeedOutcome {
  double acc_paota = 0, acc_sgd = 0, acc_cotaf = 0;
  std::optional<double> t_paota, t_sgd, t_cotaf;
  double acc_paota_noisy = 0, acc_cotaf_noisy = 0;
};

std::optional<double> time_to(const RunResult& r, double target) {
  const std::vector<double> targets = {target};
  return time_to_accuracy(r.records, targets)[0].clock;
}

std::string show(std::optional<double> t) {
  if (!t) return "not reached";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", *t);
  return buf;
}

// 8. Desk-scale learning ordering over five seeds.
bool learning_ordering() {
  const auto t0 = Clock::now();
  std::vector<SeedOutcome> out;
  bool diverged = false;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ExperimentConfig cfg = desk_config();
    cfg.seed = seed;
    const ExperimentData data = prepare_data(cfg);
    const Mlp model = model_for(data);
    SeedOutcome s;
    auto go = [&](Algorithm a, double n0) {
      ExperimentConfig c = cfg;
      c.algorithm = a;
      c.n0_dbm_hz = n0;
      RunResult r = run(c, data, model);
      diverged = diverged || r.diverged;
      return r;
    };
    const RunResult p = go(Algorithm::kPaota, -174), l = go(Algorithm::kLocalSgd, -174),
                    c = go(Algorithm::kCotaf, -174);
    s.acc_paota = p.records.back().test_acc;
    s.acc_sgd = l.records.back().test_acc;
    s.acc_cotaf = c.records.back().test_acc;
    s.t_paota = time_to(p, 0.7);
    s.t_sgd = time_to(l, 0.7);
    s.t_cotaf = time_to(c, 0.7);
    s.acc_paota_noisy = go(Algorithm::kPaota, -74).records.back().test_acc;
    s.acc_cotaf_noisy = go(Algorithm::kCotaf, -74).records.back().test_acc;
    note(
        "seed %llu: acc paota %.4f local_sgd %.4f cotaf %.4f | t70 paota %s local_sgd %s "
        "cotaf %s | -74 dBm/Hz: paota %.4f cotaf %.4f",
        static_cast<unsigned long long>(seed), s.acc_paota, s.acc_sgd, s.acc_cotaf,
        show(s.t_paota).c_str(), show(s.t_sgd).c_str(), show(s.t_cotaf).c_str(), s.acc_paota_noisy,
        s.acc_cotaf_noisy);
    out.push_back(s);
  }
  double mean_p = 0, mean_l = 0;
  int ordered = 0, robust = 0;
  auto before = [](std::optional<double> a, std::optional<double> b) {
    return a.has_value() && (!b.has_value() || *a < *b);
  };
  for (const SeedOutcome& s : out) {
    mean_p += s.acc_paota / 5;
    mean_l += s.acc_sgd / 5;
    if (before(s.t_paota, s.t_sgd) && before(s.t_sgd, s.t_cotaf)) ++ordered;
    if (s.acc_paota_noisy >= s.acc_cotaf_noisy) ++robust;
  }
  const double gap_pp = 100.0 * std::abs(mean_p - mean_l);
  const double elapsed = seconds_since(t0);
  const bool i = gap_pp <= 3.0, ii = ordered >= 4, iii = robust >= 4;
  note("(i) mean final accuracy paota %.2f%% vs local_sgd %.2f%%: gap %.2f pp (<= 3) %s",
       100 * mean_p, 100 * mean_l, gap_pp, i ? "ok" : "fails");
  note("(ii) time-to-70%% ordering paota < local_sgd < cotaf in %d/5 seeds (>= 4) %s", ordered,
       ii ? "ok" : "fails");
  note("(iii) -74 dBm/Hz accuracy paota >= cotaf in %d/5 seeds (>= 4) %s", robust,
       iii ? "ok" : "fails");
  note("%.0f s (limit 3600 s)%s", elapsed, diverged ? "; a run diverged" : "");
  return i && ii && iii && elapsed <= 3600.0 && !diverged;
}

// 9. A client forced to 1.5 periods uploads every second round with s = 1, rho = 0.75.
bool staleness_mechanics() {
  ExperimentConfig cfg = desk_config();
  cfg.R = 20;
  const ExperimentData data = prepare_data(cfg);
  const Mlp model = model_for(data);
  const std::size_t slow = 3;
  RunOptions opts;
  opts.latency = [&](std::size_t k, std::size_t r) {
    return k == slow ? 1.5 * cfg.delta_t : sample_latency(k, r, cfg.stream_seed(cfg.seed_latency));
  };
  const RunResult res = run_paota(cfg, data, model, opts);
  bool ok = res.records.size() == cfg.R;
  std::size_t uploads = 0;
  for (const RoundRecord& rec : res.records) {
    const ParticipantRecord* p = nullptr;
    for (const auto& q : rec.participants) {
      if (q.id == slow) p = &q;
    }
    const bool expected = rec.r % 2 == 0;
    if ((p != nullptr) != expected) ok = false;
    if (p != nullptr) {
      ++uploads;
      if (p->staleness != 1 || p->rho != 0.75) ok = false;
    }
  }
  note("client %zu uploaded in %zu of %zu rounds, expected rounds 2, 4, ..., %zu", slow, uploads,
       res.records.size(), cfg.R);
  return ok && uploads == cfg.R / 2;
}

struct Criterion {
  int id;
  const char* title;
  std::function<bool()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "noiseless aggregation exactness", noiseless_exactness},
      {2, "optimizer within 2% of grid oracle", optimizer_vs_oracle},
      {3, "Dinkelbach monotonicity and convergence", dinkelbach_behavior},
      {4, "branch-and-bound equals enumeration", mip_exactness},
      {5, "eigen transform identities", transform_identities},
      {6, "smoothness inequality on quadratics", smoothness_checks},
      {7, "contraction and error-floor evaluators", theory_evaluators},
      {8, "desk-scale learning ordering", learning_ordering},
      {9, "staleness mechanics", staleness_mechanics},
  };
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  int failed = 0;
  for (const Criterion& c : all) {
    if (only != 0 && c.id != only) continue;
    bool pass = false;
    try {
      pass = c.run();
    } catch (const std::exception& e) {
      std::printf("    exception: %s\n", e.what());
    }
    std::printf("criterion %d: %s  %s\n", c.id, pass ? "PASS" : "FAIL", c.title);
    std::fflush(stdout);
    failed += !pass;
  }
  return failed == 0 ? 0 : 1;
}
