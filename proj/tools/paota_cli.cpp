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

// Command-line front end: runs experiments, tabulates time-to-accuracy,
// reports estimated constants and bound terms, and replays dumped
// power-control problems.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "paota/analysis/constants.hpp"
#include "paota/analysis/theory.hpp"
#include "paota/bench/config.hpp"
#include "paota/bench/experiment.hpp"
#include "paota/bench/output.hpp"
#include "paota/core/errors.hpp"
#include "paota/core/metrics.hpp"
#include "paota/kernels/kernels.hpp"
#include "paota/powerctl/brute_force.hpp"
#include "paota/powerctl/dinkelbach.hpp"
#include "paota/powerctl/dump.hpp"

namespace {

using namespace paota;

constexpr int kExitConfig = 2;
constexpr int kExitDivergence = 3;

struct CommonFlags {
  std::string config;
  std::string algorithm;
  std::size_t rounds = 0;
  double delta_t = 0.0;
  std::optional<double> n0;
  std::uint64_t seed = 0;
  std::string out;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* app, CommonFlags& f, bool with_algorithm) {
  app->add_option("-c,--config", f.config, "key = value configuration file");
  if (with_algorithm) app->add_option("--algorithm", f.algorithm, "paota | local_sgd | cotaf");
  app->add_option("--rounds", f.rounds, "number of global rounds R");
  app->add_option("--delta-t", f.delta_t, "aggregation period in seconds");
  app->add_option("--n0-dbm-hz", f.n0, "noise power spectral density (dBm/Hz)");
  app->add_option("--seed", f.seed, "master seed");
  app->add_option("--out", f.out, "output path (CSV stem or directory)");
  app->add_option("--set", f.overrides, "extra key=value override (repeatable)");
}

ExperimentConfig build_config(const CommonFlags& f) {
  ExperimentConfig cfg = f.config.empty() ? ExperimentConfig{} : load_config(f.config);
  for (const std::string& kv : f.overrides) apply_config_text(cfg, kv, "--set");
  if (!f.algorithm.empty()) cfg.algorithm = parse_algorithm(f.algorithm);
  if (f.rounds > 0) cfg.R = f.rounds;
  if (f.delta_t > 0.0) cfg.delta_t = f.delta_t;
  if (f.n0) cfg.n0_dbm_hz = *f.n0;
  if (f.seed > 0) cfg.seed = f.seed;
  if (!f.out.empty()) cfg.out = f.out;
  cfg.validate();
  return cfg;
}

std::vector<double> parse_targets(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("bad accuracy target '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("no accuracy targets");
  return out;
}

double final_accuracy(const std::vector<RoundRecord>& records) {
  return records.empty() ? 0.0 : records.back().test_acc;
}

int cmd_run(const CommonFlags& f, const std::string& dump_path) {
  const ExperimentConfig cfg = build_config(f);
  const ExperimentData data = prepare_data(cfg);
  const Mlp model = model_for(data);
  RunOptions opts;
  std::ofstream dump;
  if (!dump_path.empty()) {
    const std::filesystem::path dp(dump_path);
    if (dp.has_parent_path()) std::filesystem::create_directories(dp.parent_path());
    dump.open(dp, std::ios::binary);
    if (!dump) throw ConfigError("cannot write " + dump_path);
    opts.on_problem = [&](std::size_t r, const FractionalQP& fqp, const DinkelbachResult* res) {
      dump << dump_fqp(fqp, res, r) << '\n';
    };
  }
  opts.on_round = [](const RoundRecord& r) {
    std::fprintf(stderr, "round %zu  t=%.2fs  n=%zu  loss=%.4f  acc=%.4f\n", r.r, r.clock,
                 r.participants.size(), r.train_loss, r.test_acc);
  };
  const RunResult res = run(cfg, data, model, opts);
  const std::filesystem::path stem =
      cfg.out.empty() ? std::filesystem::path("out") /
                            (to_string(cfg.algorithm) + "_seed" + std::to_string(cfg.seed))
                      : cfg.out.parent_path() / cfg.out.stem();
  write_run_files(stem, res.records, res.algorithm);
  std::printf("%s: %zu rounds, final accuracy %.4f, virtual time %.2f s -> %s.csv\n",
              to_string(res.algorithm).c_str(), res.records.size(), final_accuracy(res.records),
              res.records.empty() ? 0.0 : res.records.back().clock, stem.string().c_str());
  if (res.diverged) {
    std::fprintf(stderr, "diverged: %s\n", res.error.c_str());
    return kExitDivergence;
  }
  return 0;
}

std::vector<RoundRecord> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::string line;
  std::getline(in, line);
  if (line != kCsvHeader) throw ConfigError(path + ": unexpected CSV header");
  std::vector<RoundRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 9) throw ConfigError(path + ": malformed row '" + line + "'");
    RoundRecord r;
    r.r = std::stoul(cells[0]);
    r.clock = std::stod(cells[1]);
    r.test_acc = std::stod(cells[4]);
    out.push_back(r);
  }
  return out;
}

int cmd_tta(const std::vector<std::string>& csvs, const std::string& targets_text) {
  const std::vector<double> targets = parse_targets(targets_text);
  std::vector<TtaRow> rows;
  for (const std::string& path : csvs) {
    const std::vector<RoundRecord> records = read_csv(path);
    if (records.empty()) throw ConfigError(path + ": no rounds");
    rows.push_back({std::filesystem::path(path).stem().string(), time_to_accuracy(records, targets),
                    final_accuracy(records)});
  }
  write_tta_markdown(std::cout, targets, rows);
  return 0;
}

int cmd_compare(const CommonFlags& f, std::size_t seeds, const std::string& targets_text) {
  ExperimentConfig base = build_config(f);
  const std::vector<double> targets = parse_targets(targets_text);
  const std::filesystem::path dir = base.out.empty() ? "out/compare" : base.out;
  bool diverged = false;
  std::vector<TtaRow> rows;
  for (std::size_t i = 0; i < seeds; ++i) {
    ExperimentConfig cfg = base;
    cfg.seed = base.seed + i;
    const ExperimentData data = prepare_data(cfg);
    const Mlp model = model_for(data);
    for (Algorithm a : {Algorithm::kPaota, Algorithm::kLocalSgd, Algorithm::kCotaf}) {
      cfg.algorithm = a;
      const RunResult res = run(cfg, data, model);
      const std::string label = to_string(a) + "_seed" + std::to_string(cfg.seed);
      write_run_files(dir / label, res.records, a);
      if (res.diverged) {
        diverged = true;
        std::fprintf(stderr, "%s diverged: %s\n", label.c_str(), res.error.c_str());
      }
      if (res.records.empty()) continue;
      rows.push_back({label, time_to_accuracy(res.records, targets), final_accuracy(res.records)});
      std::fprintf(stderr, "%s done\n", label.c_str());
    }
  }
  write_tta_markdown(std::cout, targets, rows);
  return diverged ? kExitDivergence : 0;
}

int cmd_report(const CommonFlags& f, std::size_t probes) {
  ExperimentConfig cfg = build_config(f);
  cfg.algorithm = Algorithm::kPaota;
  const ExperimentData data = prepare_data(cfg);
  const Mlp model = model_for(data);

  EstimationProblem prob;
  prob.model = &model;
  prob.shards = data.shards;
  prob.center = model.initial_parameters(cfg.stream_seed(cfg.seed_init));
  prob.trainer.local_rounds = cfg.M;
  prob.trainer.learning_rate = cfg.eta;
  prob.trainer.batch_size = cfg.batch_size;
  prob.trainer.seed = cfg.stream_seed(cfg.seed_training);
  prob.noise_var = cfg.noise_var();
  ConstantEstimate est = estimate_constants(prob, probes, cfg.seed);
  TheoryConstants c = est.constants;
  c.eta = cfg.eta;
  c.M = static_cast<double>(cfg.M);
  c.K = static_cast<double>(cfg.K);
  c.d = static_cast<double>(model.dimension());
  c.noise_var = cfg.noise_var();
  std::printf("estimated constants: %s\n", c.to_string().c_str());
  std::printf("step-size condition 1 - 2 eta^2 M^2 L^2 = %.6g (%s)\n", c.denominator(),
              c.valid() ? "valid" : "violated");

  const RunResult res = run(cfg, data, model);
  const double gap0 = evaluate(model, prob.center, data.shards).loss;
  if (!c.valid()) {
    std::printf("bound terms need a valid step size; reporting G^r terms (d), (e) only\n");
    std::printf("| r | clock_s | acc | G_d | G_e |\n|---:|---:|---:|---:|---:|\n");
    for (const RoundRecord& r : res.records) {
      std::printf("| %zu | %.1f | %.4f | %.4g | %.4g |\n", r.r, r.clock, r.test_acc, r.g_term_d,
                  r.g_term_e);
    }
    return res.diverged ? kExitDivergence : 0;
  }
  std::vector<double> A, G;
  std::printf("| r | clock_s | acc | A^r | G_a | G_b | G_c | G_d | G_e | bound |\n");
  std::printf("|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|\n");
  for (const RoundRecord& r : res.records) {
    const ArResult ar = compute_Ar(c);
    std::vector<double> alpha(cfg.K, 0.0), p(cfg.K, 0.0);
    std::vector<int> b(cfg.K, 0);
    for (const ParticipantRecord& pr : r.participants) {
      alpha[pr.id] = pr.alpha;
      p[pr.id] = pr.p;
      b[pr.id] = 1;
    }
    GrTerms g;
    if (!r.participants.empty()) g = compute_Gr(c, alpha, p, b);
    A.push_back(ar.value);
    G.push_back(g.total());
    std::printf("| %zu | %.1f | %.4f | %.6g | %.4g | %.4g | %.4g | %.4g | %.4g | %.6g |\n", r.r,
                r.clock, r.test_acc, ar.value, g.a, g.b, g.c, g.d, g.e,
                bound_recursion(A, G, gap0));
  }
  return res.diverged ? kExitDivergence : 0;
}

int cmd_solve(const std::string& path, std::size_t segments, double grid) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::string line;
  std::size_t n_line = 0;
  while (std::getline(in, line)) {
    ++n_line;
    if (line.empty()) continue;
    const FractionalQP fqp = load_fqp(line);
    PlaConfig pla;
    pla.segments = segments;
    const DinkelbachResult res = dinkelbach_solve(fqp, 1e-6, pla);
    std::printf("record %zu: n=%zu  h1/h2=%.10g  iterations=%zu", n_line, fqp.size(), res.objective,
                res.trace.iterates.size());
    if (fqp.size() <= 4 && grid > 0.0) {
      const GridResult gr = brute_force_beta(fqp, grid);
      std::printf("  grid h1/h2=%.10g  rel.diff=%.3g", gr.objective,
                  (res.objective - gr.objective) / gr.objective);
    }
    std::printf("\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-asynchronous over-the-air federated learning simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "paota 0.1");
  bool list_kernels = false;
  app.add_flag("--kernels", list_kernels, "print the selected SIMD kernel set");

  CommonFlags run_flags, cmp_flags, rep_flags;
  std::string dump_path;
  auto* run_cmd = app.add_subcommand("run", "run one algorithm and write CSV + JSONL");
  add_common(run_cmd, run_flags, true);
  run_cmd->add_option("--dump-problems", dump_path, "write each round's power problem (JSONL)");

  std::vector<std::string> csvs;
  std::string targets = "0.5,0.6,0.7";
  auto* tta_cmd = app.add_subcommand("tta", "time-to-accuracy table from run CSVs");
  tta_cmd->add_option("csv", csvs, "run CSV files")->required();
  tta_cmd->add_option("--targets", targets, "comma-separated accuracy fractions");

  std::size_t seeds = 5;
  auto* cmp_cmd = app.add_subcommand("compare", "all algorithms over several seeds");
  add_common(cmp_cmd, cmp_flags, false);
  cmp_cmd->add_option("--seeds", seeds, "number of consecutive seeds")->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--targets", targets, "comma-separated accuracy fractions");

  std::size_t probes = 100;
  auto* rep_cmd = app.add_subcommand("report", "estimated constants and per-round bound terms");
  add_common(rep_cmd, rep_flags, false);
  rep_cmd->add_option("--probes", probes, "probe points for constant estimation (>= 100)");

  std::string problems;
  std::size_t segments = 32;
  double grid = 0.02;
  auto* solve_cmd = app.add_subcommand("solve", "re-solve dumped power problems");
  solve_cmd->add_option("problems", problems, "JSONL file from run --dump-problems")->required();
  solve_cmd->add_option("--segments", segments, "PLA segments per dimension");
  solve_cmd->add_option("--grid", grid, "brute-force grid step (0 disables)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  if (list_kernels)
    std::fprintf(stderr, "kernels: %s\n",
                 std::string(kernels::name(kernels::active_backend())).c_str());

  try {
    if (*run_cmd) return cmd_run(run_flags, dump_path);
    if (*tta_cmd) return cmd_tta(csvs, targets);
    if (*cmp_cmd) return cmd_compare(cmp_flags, seeds, targets);
    if (*rep_cmd) return cmd_report(rep_flags, probes);
    if (*solve_cmd) return cmd_solve(problems, segments, grid);
  } catch (const DivergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDivergence;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
