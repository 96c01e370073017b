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

#include "paota/bench/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "paota/airchannel/channel.hpp"
#include "paota/core/errors.hpp"

namespace paota {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kPaota:
      return "paota";
    case Algorithm::kLocalSgd:
      return "local_sgd";
    case Algorithm::kCotaf:
      return "cotaf";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& s) {
  if (s == "paota") return Algorithm::kPaota;
  if (s == "local_sgd") return Algorithm::kLocalSgd;
  if (s == "cotaf") return Algorithm::kCotaf;
  throw ConfigError("unknown algorithm '" + s + "' (paota, local_sgd, cotaf)");
}

double ExperimentConfig::noise_var() const { return noise_variance(bandwidth_hz, n0_dbm_hz); }

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad number for '" + key + "': '" + v + "'");
  }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("bad integer for '" + key + "': '" + v + "'");
  }
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw ConfigError("bad boolean for '" + key + "': '" + v + "'");
}

}  // namespace

void ExperimentConfig::set(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  auto sz = [&] { return static_cast<std::size_t>(to_u64(key, v)); };
  if (key == "algorithm") {
    algorithm = parse_algorithm(v);
  } else if (key == "K") {
    K = sz();
  } else if (key == "R" || key == "rounds") {
    R = sz();
  } else if (key == "delta_t") {
    delta_t = to_double(key, v);
  } else if (key == "M") {
    M = sz();
  } else if (key == "eta") {
    eta = to_double(key, v);
  } else if (key == "batch_size") {
    batch_size = sz();
  } else if (key == "omega") {
    omega = to_double(key, v);
  } else if (key == "p_max") {
    p_max = to_double(key, v);
  } else if (key == "bandwidth_hz") {
    bandwidth_hz = to_double(key, v);
  } else if (key == "n0_dbm_hz") {
    n0_dbm_hz = to_double(key, v);
  } else if (key == "L") {
    L = to_double(key, v);
  } else if (key == "eps") {
    eps = to_double(key, v);
  } else if (key == "pla_segments") {
    pla_segments = sz();
  } else if (key == "dinkelbach_tol") {
    dinkelbach_tol = to_double(key, v);
  } else if (key == "power") {
    if (v == "optimized") {
      power = PowerMode::kOptimized;
    } else if (v == "max") {
      power = PowerMode::kMaxPower;
    } else {
      throw ConfigError("power must be 'optimized' or 'max'");
    }
  } else if (key == "dataset") {
    if (v == "mnist") {
      dataset = DatasetKind::kMnist;
    } else if (v == "blobs") {
      dataset = DatasetKind::kBlobs;
    } else {
      throw ConfigError("dataset must be 'mnist' or 'blobs'");
    }
  } else if (key == "data_dir") {
    data_dir = v;
  } else if (key == "train_limit") {
    train_limit = sz();
  } else if (key == "test_limit") {
    test_limit = sz();
  } else if (key == "standardize") {
    standardize = to_bool(key, v);
  } else if (key == "blob_samples") {
    blobs.samples = sz();
  } else if (key == "blob_feature_dim") {
    blobs.feature_dim = sz();
  } else if (key == "blob_classes") {
    blobs.num_classes = static_cast<int>(to_u64(key, v));
  } else if (key == "blob_separation") {
    blobs.separation = to_double(key, v);
  } else if (key == "blob_noise") {
    blobs.noise = to_double(key, v);
  } else if (key == "blob_test_fraction") {
    blob_test_fraction = to_double(key, v);
  } else if (key == "size_pool") {
    size_pool.clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
      size_pool.push_back(static_cast<std::size_t>(to_u64(key, trim(item))));
  } else if (key == "max_labels") {
    max_labels = sz();
  } else if (key == "partition") {
    if (v == "disjoint") {
      partition = PartitionMode::kDisjoint;
    } else if (v == "independent") {
      partition = PartitionMode::kIndependent;
    } else {
      throw ConfigError("partition must be 'disjoint' or 'independent'");
    }
  } else if (key == "participants") {
    participants = sz();
  } else if (key == "local_sgd_equal_weights") {
    local_sgd_equal_weights = to_bool(key, v);
  } else if (key == "seed") {
    seed = to_u64(key, v);
  } else if (key == "seed_partition") {
    seed_partition = to_u64(key, v);
  } else if (key == "seed_channel") {
    seed_channel = to_u64(key, v);
  } else if (key == "seed_noise") {
    seed_noise = to_u64(key, v);
  } else if (key == "seed_latency") {
    seed_latency = to_u64(key, v);
  } else if (key == "seed_init") {
    seed_init = to_u64(key, v);
  } else if (key == "seed_training") {
    seed_training = to_u64(key, v);
  } else if (key == "out") {
    out = v;
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

void ExperimentConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(K >= 1, "K must be >= 1");
  require(R >= 1, "R must be >= 1");
  require(delta_t > 0.0 && std::isfinite(delta_t), "delta_t must be positive");
  require(M >= 1, "M must be >= 1");
  require(eta >= 0.0 && std::isfinite(eta), "eta must be non-negative");
  require(batch_size >= 1, "batch_size must be >= 1");
  require(omega > 0.0, "omega must be positive");
  require(p_max > 0.0, "p_max must be positive");
  require(bandwidth_hz > 0.0, "bandwidth_hz must be positive");
  require(!std::isnan(n0_dbm_hz) && n0_dbm_hz < std::numeric_limits<double>::infinity(),
          "n0_dbm_hz must be finite or -inf");
  require(L > 0.0 && eps >= 0.0, "L must be positive and eps non-negative");
  require(pla_segments >= 1, "pla_segments must be >= 1");
  require(dinkelbach_tol > 0.0, "dinkelbach_tol must be positive");
  require(!size_pool.empty(), "size_pool must not be empty");
  require(max_labels >= 1, "max_labels must be >= 1");
  require(participants <= K, "participants must not exceed K");
  require(blob_test_fraction > 0.0 && blob_test_fraction < 1.0, "blob_test_fraction in (0, 1)");
}

void apply_config_text(ExperimentConfig& cfg, const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    }
    try {
      cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  ExperimentConfig cfg;
  apply_config_text(cfg, ss.str(), path.string());
  return cfg;
}

}  // namespace paota
