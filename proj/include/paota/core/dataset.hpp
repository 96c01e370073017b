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
#include <memory>
#include <set>
#include <span>
#include <vector>

namespace paota {

/// Row-major sample matrix with integer class labels and optional real
/// regression targets.
struct Dataset {
  std::size_t feature_dim = 0;
  int num_classes = 0;
  std::vector<double> features;
  std::vector<int> labels;
  std::vector<double> targets;  // empty for classification data

  std::size_t size() const { return labels.size(); }
  bool empty() const { return labels.empty(); }

  std::span<const double> row(std::size_t i) const {
    return {features.data() + i * feature_dim, feature_dim};
  }

  // Sample indices 0..size()-1.
  std::vector<std::size_t> all_rows() const;
};

/// Client-local slice of a shared dataset.
struct DataShard {
  int owner = 0;
  std::shared_ptr<const Dataset> source;
  std::vector<std::size_t> indices;  // sorted, unique

  std::size_t size() const { return indices.size(); }
  std::set<int> label_set() const;
};

enum class FeatureScaling {
  kUnit,         // pixel / 255
  kStandardize,  // (pixel / 255 - mean) / stddev, statistics of this file
};

/// Reads MNIST-layout IDX image/label files (gzip-compressed or raw).
/// `limit` caps the number of samples read (0 = all).
Dataset load_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                 std::size_t limit = 0, FeatureScaling scaling = FeatureScaling::kUnit);

/// Shifts and scales features in place: x <- (x - mean) / stddev.
void standardize_features(Dataset& data, double mean, double stddev);

struct BlobSpec {
  std::size_t samples = 2000;
  std::size_t feature_dim = 784;
  int num_classes = 10;
  double separation = 3.0;  // distance scale between class centres
  double noise = 1.0;       // per-coordinate sample spread
};

/// Seeded Gaussian-blob classification set for offline runs.
Dataset make_gaussian_blobs(const BlobSpec& spec, std::uint64_t seed);

enum class PartitionMode {
  // Shards are pairwise disjoint; fails when the pool runs dry.
  kDisjoint,
  // Each shard is drawn independently from the whole dataset (distinct
  // samples within a shard, overlap across shards allowed).
  kIndependent,
};

/// Splits `dataset` into K label-skewed shards whose sizes are drawn from
/// `size_pool` and which hold at most `max_labels` distinct labels each.
/// Throws CapacityError when a drawn size cannot be served.
std::vector<DataShard> partition_non_iid(std::shared_ptr<const Dataset> dataset, std::size_t K,
                                         std::span<const std::size_t> size_pool,
                                         std::size_t max_labels, std::uint64_t seed,
                                         PartitionMode mode = PartitionMode::kDisjoint);

}  // namespace paota
