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

#include "paota/bench/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "paota/airchannel/channel.hpp"
#include "paota/analysis/theory.hpp"
#include "paota/core/errors.hpp"
#include "paota/core/metrics.hpp"
#include "paota/core/random.hpp"
#include "paota/core/trainer.hpp"

namespace paota {

ExperimentData prepare_data(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentData out;
  if (cfg.dataset == DatasetKind::kMnist) {
    const auto& dir = cfg.data_dir;
    Dataset train = load_idx(dir / "train-images-idx3-ubyte.gz", dir / "train-labels-idx1-ubyte.gz",
                             cfg.train_limit);
    Dataset test = load_idx(dir / "t10k-images-idx3-ubyte.gz", dir / "t10k-labels-idx1-ubyte.gz",
                            cfg.test_limit);
    if (cfg.standardize) {
      const double n = static_cast<double>(train.features.size());
      const double mean = std::accumulate(train.features.begin(), train.features.end(), 0.0) / n;
      double var = 0.0;
      for (double v : train.features) var += (v - mean) * (v - mean);
      const double sd = std::sqrt(var / n);
      standardize_features(train, mean, sd);
      standardize_features(test, mean, sd);
    }
    out.train = std::make_shared<const Dataset>(std::move(train));
    out.test = std::make_shared<const Dataset>(std::move(test));
  } else {
    const Dataset all = make_gaussian_blobs(cfg.blobs, derive_seed(cfg.seed, {0xB10B}));
    const auto n_test = static_cast<std::size_t>(
        std::llround(cfg.blob_test_fraction * static_cast<double>(all.size())));
    if (n_test == 0 || n_test >= all.size()) throw ConfigError("blob test split is empty");
    Dataset train, test;
    for (Dataset* d : {&train, &test}) {
      d->feature_dim = all.feature_dim;
      d->num_classes = all.num_classes;
    }
    const std::size_t n_train = all.size() - n_test;
    for (std::size_t i = 0; i < all.size(); ++i) {
      Dataset& d = i < n_train ? train : test;
      const auto row = all.row(i);
      d.features.insert(d.features.end(), row.begin(), row.end());
      d.labels.push_back(all.labels[i]);
    }
    out.train = std::make_shared<const Dataset>(std::move(train));
    out.test = std::make_shared<const Dataset>(std::move(test));
  }
  out.shards = partition_non_iid(out.train, cfg.K, cfg.size_pool, cfg.max_labels,
                                 cfg.stream_seed(cfg.seed_partition), cfg.partition);
  return out;
}

Mlp model_for(const ExperimentData& data) {
  if (!data.train) throw ConfigError("model_for: data not prepared");
  return Mlp({data.train->feature_dim, 10, 10, static_cast<std::size_t>(data.train->num_classes)});
}

namespace {

TrainerConfig trainer_for(const ExperimentConfig& cfg, std::size_t client, std::size_t round) {
  TrainerConfig t;
  t.local_rounds = cfg.M;
  t.learning_rate = cfg.eta;
  t.batch_size = cfg.batch_size;
  t.seed = derive_seed(cfg.stream_seed(cfg.seed_training), Stream::kTraining, {client, round});
  return t;
}

TheoryConstants record_constants(const ExperimentConfig& cfg, const Model& model) {
  TheoryConstants c;
  c.L = cfg.L;
  c.eps = cfg.eps;
  c.K = static_cast<double>(cfg.K);
  c.d = static_cast<double>(model.dimension());
  c.noise_var = cfg.noise_var();
  return c;
}

double latency_of(const ExperimentConfig& cfg, const RunOptions& options, std::size_t client,
                  std::size_t round) {
  return options.latency ? options.latency(client, round)
                         : sample_latency(client, round, cfg.stream_seed(cfg.seed_latency));
}

void finish_record(RoundRecord& rec, const ExperimentConfig& cfg, const ExperimentData& data,
                   const Model& model, const ParamVector& w_g, bool noisy) {
  rec.train_loss = evaluate(model, w_g, data.shards).loss;
  rec.test_acc = evaluate(model, w_g, *data.test).accuracy;
  const TheoryConstants c = record_constants(cfg, model);
  std::vector<double> alpha;
  for (const auto& p : rec.participants) alpha.push_back(p.alpha);
  rec.g_term_d = rec.participants.empty() ? 0.0 : g_term_d(c, alpha);
  rec.g_term_e = noisy && rec.power_sum > 0.0 ? g_term_e(c, rec.power_sum) : 0.0;
}

void check_model(const ExperimentData& data, const Model& model) {
  if (!data.train || !data.test || data.shards.empty()) throw ConfigError("run: data not prepared");
  if (data.train->feature_dim == 0) throw ConfigError("run: empty feature space");
  (void)model;
}

}  // namespace

RunResult run_paota(const ExperimentConfig& cfg, const ExperimentData& data, const Model& model,
                    const RunOptions& options) {
  cfg.validate();
  check_model(data, model);
  RunResult result;
  result.algorithm = Algorithm::kPaota;

  GlobalState state;
  state.w_g = model.initial_parameters(cfg.stream_seed(cfg.seed_init));
  state.w_prev = state.w_g;
  state.delta_t = cfg.delta_t;
  std::vector<ClientRuntime> clients = make_clients(cfg.K);

  RoundConfig rc;
  rc.K = cfg.K;
  rc.omega = cfg.omega;
  rc.p_max.assign(cfg.K, cfg.p_max);
  rc.L = cfg.L;
  rc.eps = cfg.eps;
  rc.noise_var = cfg.noise_var();
  rc.pla_segments = cfg.pla_segments;
  rc.dinkelbach_tol = cfg.dinkelbach_tol;
  rc.power = cfg.power;
  rc.channel_seed = cfg.stream_seed(cfg.seed_channel);
  rc.noise_seed = cfg.stream_seed(cfg.seed_noise);
  rc.latency_seed = cfg.stream_seed(cfg.seed_latency);

  RoundHooks hooks;
  hooks.train = [&](std::size_t client, const ParamVector& w_start, std::size_t round) {
    return local_train(model, w_start, data.shards[client], trainer_for(cfg, client, round));
  };
  if (options.latency) hooks.latency = options.latency;
  hooks.on_problem = options.on_problem;

  for (std::size_t r = 1; r <= cfg.R; ++r) {
    RoundRecord rec;
    try {
      rec = advance_round(state, clients, rc, hooks);
    } catch (const DivergenceError& e) {
      result.diverged = true;
      result.error = e.what();
      break;
    }
    finish_record(rec, cfg, data, model, state.w_g, true);
    if (options.on_round) options.on_round(rec);
    result.records.push_back(std::move(rec));
  }
  result.final_model = state.w_g;
  return result;
}

double paota_average_participation(const ExperimentConfig& cfg, const RunOptions& options) {
  std::vector<double> busy_until(cfg.K, 0.0);
  std::vector<char> running(cfg.K, 0);
  std::size_t uploads = 0;
  for (std::size_t r = 1; r <= cfg.R; ++r) {
    const double start = static_cast<double>(r - 1) * cfg.delta_t;
    const double end = static_cast<double>(r) * cfg.delta_t;
    for (std::size_t k = 0; k < cfg.K; ++k) {
      if (running[k]) continue;
      running[k] = 1;
      busy_until[k] = start + latency_of(cfg, options, k, r);
    }
    for (std::size_t k = 0; k < cfg.K; ++k) {
      if (running[k] && busy_until[k] <= end) {
        running[k] = 0;
        ++uploads;
      }
    }
  }
  return static_cast<double>(uploads) / static_cast<double>(cfg.R);
}

std::vector<std::size_t> select_clients(const ExperimentConfig& cfg, std::size_t round,
                                        std::size_t m) {
  Rng rng(derive_seed(cfg.seed, Stream::kSelection, {round}));
  std::vector<std::size_t> ids = rng.sample_without_replacement(cfg.K, m);
  std::sort(ids.begin(), ids.end());
  return ids;
}

namespace {

std::size_t baseline_participants(const ExperimentConfig& cfg, const RunOptions& options) {
  if (cfg.participants > 0) return cfg.participants;
  const double avg = paota_average_participation(cfg, options);
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(avg)), 1, cfg.K);
}

enum class SyncMode { kExactAverage, kAirComp };

RunResult run_synchronous(const ExperimentConfig& cfg, const ExperimentData& data,
                          const Model& model, const RunOptions& options, SyncMode mode) {
  cfg.validate();
  check_model(data, model);
  RunResult result;
  result.algorithm = mode == SyncMode::kAirComp ? Algorithm::kCotaf : Algorithm::kLocalSgd;
  const std::size_t m = baseline_participants(cfg, options);
  result.participants_per_round = m;

  ParamVector w_g = model.initial_parameters(cfg.stream_seed(cfg.seed_init));
  const std::size_t dim = w_g.size();
  const double noise_var = mode == SyncMode::kAirComp ? cfg.noise_var() : 0.0;
  double clock = 0.0;
  for (std::size_t r = 1; r <= cfg.R; ++r) {
    RoundRecord rec;
    rec.r = r;
    rec.noise_var = noise_var;
    rec.channel_seed = cfg.stream_seed(cfg.seed_channel);
    rec.noise_seed = derive_seed(cfg.stream_seed(cfg.seed_noise), Stream::kNoise, {r});
    const std::vector<std::size_t> selected = select_clients(cfg, r, m);
    rec.broadcast = selected;

    std::vector<LocalResult> locals;
    double round_time = 0.0;
    try {
      for (std::size_t k : selected) {
        locals.push_back(local_train(model, w_g, data.shards[k], trainer_for(cfg, k, r)));
        round_time = std::max(round_time, latency_of(cfg, options, k, r));
      }
    } catch (const DivergenceError& e) {
      result.diverged = true;
      result.error = e.what();
      break;
    }
    clock += round_time;
    rec.clock = clock;

    if (mode == SyncMode::kExactAverage) {
      ParamVector next(dim);
      double total = 0.0;
      for (std::size_t k : selected) total += static_cast<double>(data.shards[k].size());
      for (std::size_t i = 0; i < selected.size(); ++i) {
        const std::size_t k = selected[i];
        const double a = cfg.local_sgd_equal_weights
                             ? 1.0 / static_cast<double>(selected.size())
                             : static_cast<double>(data.shards[k].size()) / total;
        next.add_scaled(a, locals[i].w_local);
        ParticipantRecord pr;
        pr.id = k;
        pr.alpha = a;
        rec.participants.push_back(pr);
        rec.sum_alpha_sq += a * a;
      }
      w_g = std::move(next);
    } else {
      // Updates sent at full power through channel inversion; the receiver
      // normalises by the power sum and adds the mean update to w_g.
      const ChannelDraw draw = draw_channels(cfg.K, rec.channel_seed, r, noise_var);
      std::vector<int> b(cfg.K, 0);
      std::vector<double> p(cfg.K, 0.0);
      std::vector<const ParamVector*> sent(cfg.K, nullptr);
      for (std::size_t i = 0; i < selected.size(); ++i) {
        const std::size_t k = selected[i];
        if (std::abs(draw.h[k]) < kDeepFadeGuard) {
          rec.deferred.push_back(k);
          continue;
        }
        b[k] = 1;
        p[k] = cfg.p_max;
        sent[k] = &locals[i].delta;
      }
      const TransmitPlan plan = make_plan(b, p, draw);
      if (plan.power_sum() > 0.0) {
        const ParamVector y = aircomp_aggregate(plan, sent, draw, rec.noise_seed, dim);
        const Normalized mean_update = normalize(y, b, p);
        w_g.add_scaled(1.0, mean_update.w);
        for (std::size_t k = 0; k < cfg.K; ++k) {
          if (b[k] == 0) continue;
          ParticipantRecord pr;
          pr.id = k;
          pr.p = p[k];
          pr.alpha = mean_update.alpha[k];
          pr.h = draw.h[k];
          pr.tx_energy = transmit_energy(plan.phi[k], *sent[k]);
          rec.participants.push_back(pr);
          rec.sum_alpha_sq += pr.alpha * pr.alpha;
        }
        rec.power_sum = plan.power_sum();
      } else {
        rec.empty_round = true;
      }
    }
    finish_record(rec, cfg, data, model, w_g, mode == SyncMode::kAirComp);
    if (options.on_round) options.on_round(rec);
    result.records.push_back(std::move(rec));
  }
  result.final_model = std::move(w_g);
  return result;
}

}  // namespace

RunResult run_local_sgd_baseline(const ExperimentConfig& cfg, const ExperimentData& data,
                                 const Model& model, const RunOptions& options) {
  return run_synchronous(cfg, data, model, options, SyncMode::kExactAverage);
}

RunResult run_cotaf_baseline(const ExperimentConfig& cfg, const ExperimentData& data,
                             const Model& model, const RunOptions& options) {
  return run_synchronous(cfg, data, model, options, SyncMode::kAirComp);
}

RunResult run(const ExperimentConfig& cfg, const ExperimentData& data, const Model& model,
              const RunOptions& options) {
  switch (cfg.algorithm) {
    case Algorithm::kPaota:
      return run_paota(cfg, data, model, options);
    case Algorithm::kLocalSgd:
      return run_local_sgd_baseline(cfg, data, model, options);
    case Algorithm::kCotaf:
      return run_cotaf_baseline(cfg, data, model, options);
  }
  throw ConfigError("unknown algorithm");
}

}  // namespace paota
