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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "paota/core/dataset.hpp"
#include "paota/scheduler/engine.hpp"

namespace paota {

enum class Algorithm { kPaota, kLocalSgd, kCotaf };

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& s);

enum class DatasetKind { kMnist, kBlobs };

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::kPaota;
  std::size_t K = 10;
  std::size_t R = 60;
  double delta_t = 8.0;  // s
  std::size_t M = 5;
  double eta = 0.1;
  std::size_t batch_size = 32;
  double omega = 3.0;
  double p_max = 15.0;  // W, every client
  double bandwidth_hz = 20e6;
  double n0_dbm_hz = -174.0;  // -inf gives a noiseless receiver
  double L = 10.0;
  double eps = 1.0;
  std::size_t pla_segments = 32;
  double dinkelbach_tol = 1e-6;
  PowerMode power = PowerMode::kOptimized;

  DatasetKind dataset = DatasetKind::kMnist;
  std::filesystem::path data_dir = "data/mnist";
  std::size_t train_limit = 10000;  // 0 = whole file
  std::size_t test_limit = 0;
  bool standardize = true;
  BlobSpec blobs;
  double blob_test_fraction = 0.2;
  std::vector<std::size_t> size_pool = {300, 600, 900, 1200, 1500};
  std::size_t max_labels = 5;
  PartitionMode partition = PartitionMode::kIndependent;

  // Baselines: clients per synchronous round, 0 = PAOTA's average
  // participation under the same latency draws.
  std::size_t participants = 0;
  bool local_sgd_equal_weights = false;

  std::uint64_t seed = 1;
  // Per-stream overrides; 0 means "use seed".
  std::uint64_t seed_partition = 0;
  std::uint64_t seed_channel = 0;
  std::uint64_t seed_noise = 0;
  std::uint64_t seed_latency = 0;
  std::uint64_t seed_init = 0;
  std::uint64_t seed_training = 0;

  std::filesystem::path out;  // CSV path; details go next to it as .jsonl

  double noise_var() const;
  std::uint64_t stream_seed(std::uint64_t override_seed) const {
    return override_seed != 0 ? override_seed : seed;
  }

  /// Sets one field from its textual key (the names used in config files).
  /// Throws ConfigError for unknown keys or malformed values.
  void set(const std::string& key, const std::string& value);

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

/// Flat "key = value" file; '#' starts a comment.
ExperimentConfig load_config(const std::filesystem::path& path);
void apply_config_text(ExperimentConfig& cfg, const std::string& text, const std::string& origin);

}  // namespace paota
