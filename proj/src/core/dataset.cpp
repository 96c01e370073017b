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

#include "paota/core/dataset.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <string>

#include "paota/core/errors.hpp"
#include "paota/core/random.hpp"

namespace paota {

std::vector<std::size_t> Dataset::all_rows() const {
  std::vector<std::size_t> rows(size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return rows;
}

std::set<int> DataShard::label_set() const {
  std::set<int> out;
  for (std::size_t i : indices) out.insert(source->labels[i]);
  return out;
}

namespace {

class GzFile {
 public:
  explicit GzFile(const std::filesystem::path& path) : handle_(gzopen(path.c_str(), "rb")) {
    if (handle_ == nullptr) throw DataError("cannot open " + path.string());
  }
  ~GzFile() { gzclose(handle_); }
  GzFile(const GzFile&) = delete;
  GzFile& operator=(const GzFile&) = delete;

  void read(void* dst, std::size_t n, const std::string& what) {
    auto* out = static_cast<unsigned char*>(dst);
    while (n > 0) {
      const unsigned chunk = static_cast<unsigned>(std::min<std::size_t>(n, 1u << 30));
      const int got = gzread(handle_, out, chunk);
      if (got <= 0) throw DataError("truncated IDX data while reading " + what);
      out += got;
      n -= static_cast<std::size_t>(got);
    }
  }

  std::uint32_t read_be32(const std::string& what) {
    std::array<unsigned char, 4> b{};
    read(b.data(), b.size(), what);
    return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) |
           std::uint32_t{b[3]};
  }

 private:
  gzFile handle_;
};

}  // namespace

Dataset load_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                 std::size_t limit, FeatureScaling scaling) {
  GzFile img(images);
  GzFile lab(labels);
  if (img.read_be32("image magic") != 0x00000803u) {
    throw DataError(images.string() + ": not an IDX3 image file");
  }
  const std::size_t n_img = img.read_be32("image count");
  const std::size_t rows = img.read_be32("rows");
  const std::size_t cols = img.read_be32("cols");
  if (lab.read_be32("label magic") != 0x00000801u) {
    throw DataError(labels.string() + ": not an IDX1 label file");
  }
  const std::size_t n_lab = lab.read_be32("label count");
  if (n_img != n_lab) {
    throw DataError("image/label count mismatch: " + std::to_string(n_img) + " vs " +
                    std::to_string(n_lab));
  }
  const std::size_t n = limit == 0 ? n_img : std::min(limit, n_img);

  Dataset data;
  data.feature_dim = rows * cols;
  std::vector<unsigned char> pixels(n * data.feature_dim);
  img.read(pixels.data(), pixels.size(), "pixels");
  std::vector<unsigned char> raw_labels(n);
  lab.read(raw_labels.data(), raw_labels.size(), "labels");

  data.features.resize(pixels.size());
  for (std::size_t i = 0; i < pixels.size(); ++i) data.features[i] = pixels[i] / 255.0;
  data.labels.assign(raw_labels.begin(), raw_labels.end());
  data.num_classes = n == 0 ? 0 : 1 + *std::max_element(data.labels.begin(), data.labels.end());

  if (scaling == FeatureScaling::kStandardize && n > 0) {
    const double mean =
        std::accumulate(data.features.begin(), data.features.end(), 0.0) / data.features.size();
    double var = 0.0;
    for (double v : data.features) var += (v - mean) * (v - mean);
    standardize_features(data, mean, std::sqrt(var / data.features.size()));
  }
  return data;
}

void standardize_features(Dataset& data, double mean, double stddev) {
  if (!(stddev > 0.0)) throw DataError("standardize_features: non-positive stddev");
  for (double& v : data.features) v = (v - mean) / stddev;
}

Dataset make_gaussian_blobs(const BlobSpec& spec, std::uint64_t seed) {
  if (spec.samples == 0 || spec.feature_dim == 0 || spec.num_classes < 1) {
    throw ConfigError("make_gaussian_blobs: empty specification");
  }
  Rng rng(seed);
  std::vector<double> centres(static_cast<std::size_t>(spec.num_classes) * spec.feature_dim);
  const double centre_scale = spec.separation / std::sqrt(static_cast<double>(spec.feature_dim));
  for (double& c : centres) c = centre_scale * rng.normal();

  Dataset data;
  data.feature_dim = spec.feature_dim;
  data.num_classes = spec.num_classes;
  data.features.resize(spec.samples * spec.feature_dim);
  data.labels.resize(spec.samples);
  for (std::size_t i = 0; i < spec.samples; ++i) {
    const int label = static_cast<int>(i % static_cast<std::size_t>(spec.num_classes));
    data.labels[i] = label;
    const double* centre = centres.data() + static_cast<std::size_t>(label) * spec.feature_dim;
    double* x = data.features.data() + i * spec.feature_dim;
    for (std::size_t j = 0; j < spec.feature_dim; ++j) x[j] = centre[j] + spec.noise * rng.normal();
  }
  return data;
}

namespace {

// Draws up to `count` distinct labels with probability proportional to
// `weight`; labels with zero weight are never drawn.
std::vector<int> weighted_labels(const std::map<int, std::size_t>& weight, std::size_t count,
                                 Rng& rng) {
  std::vector<std::pair<int, std::size_t>> pool;
  for (const auto& [label, w] : weight) {
    if (w > 0) pool.emplace_back(label, w);
  }
  std::vector<int> out;
  while (out.size() < count && !pool.empty()) {
    std::size_t total = 0;
    for (const auto& entry : pool) total += entry.second;
    std::size_t ticket = static_cast<std::size_t>(rng.index(total));
    std::size_t pick = 0;
    while (ticket >= pool[pick].second) ticket -= pool[pick++].second;
    out.push_back(pool[pick].first);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

std::vector<int> largest_labels(const std::map<int, std::size_t>& weight, std::size_t count) {
  std::vector<std::pair<int, std::size_t>> pool(weight.begin(), weight.end());
  std::stable_sort(pool.begin(), pool.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<int> out;
  for (std::size_t i = 0; i < pool.size() && out.size() < count; ++i) {
    if (pool[i].second > 0) out.push_back(pool[i].first);
  }
  return out;
}

std::size_t capacity_of(const std::vector<int>& labels, const std::map<int, std::size_t>& weight) {
  std::size_t total = 0;
  for (int l : labels) total += weight.at(l);
  return total;
}

// Equal split across labels, topping up from labels that still have room.
std::map<int, std::size_t> water_fill(const std::vector<int>& labels,
                                      const std::map<int, std::size_t>& available,
                                      std::size_t demand) {
  std::map<int, std::size_t> take;
  for (int l : labels) take[l] = 0;
  std::size_t left = demand;
  while (left > 0) {
    std::vector<int> open;
    for (int l : labels) {
      if (take[l] < available.at(l)) open.push_back(l);
    }
    if (open.empty()) break;
    const std::size_t share = std::max<std::size_t>(1, left / open.size());
    for (int l : open) {
      const std::size_t t = std::min({share, available.at(l) - take[l], left});
      take[l] += t;
      left -= t;
      if (left == 0) break;
    }
  }
  return take;
}

}  // namespace

std::vector<DataShard> partition_non_iid(std::shared_ptr<const Dataset> dataset, std::size_t K,
                                         std::span<const std::size_t> size_pool,
                                         std::size_t max_labels, std::uint64_t seed,
                                         PartitionMode mode) {
  if (!dataset || dataset->empty()) throw DataError("partition_non_iid: empty dataset");
  if (K == 0) throw ConfigError("partition_non_iid: K must be positive");
  if (size_pool.empty()) throw ConfigError("partition_non_iid: empty size pool");
  if (max_labels == 0) throw ConfigError("partition_non_iid: max_labels must be >= 1");
  for (std::size_t s : size_pool) {
    if (s == 0) throw ConfigError("partition_non_iid: shard sizes must be positive");
  }

  Rng rng(derive_seed(seed, Stream::kPartition));
  std::map<int, std::deque<std::size_t>> queues;
  for (std::size_t i = 0; i < dataset->size(); ++i) queues[dataset->labels[i]].push_back(i);
  for (auto& [label, q] : queues) {
    std::vector<std::size_t> tmp(q.begin(), q.end());
    rng.shuffle(tmp);
    q.assign(tmp.begin(), tmp.end());
  }
  std::map<int, std::size_t> full_count;
  for (const auto& [label, q] : queues) full_count[label] = q.size();
  const std::size_t label_budget = std::min(max_labels, queues.size());

  std::vector<DataShard> shards;
  shards.reserve(K);
  for (std::size_t k = 0; k < K; ++k) {
    const std::size_t demand = size_pool[rng.index(size_pool.size())];
    DataShard shard;
    shard.owner = static_cast<int>(k);
    shard.source = dataset;

    if (mode == PartitionMode::kDisjoint) {
      std::map<int, std::size_t> remaining;
      for (const auto& [label, q] : queues) remaining[label] = q.size();
      std::vector<int> labels = weighted_labels(remaining, label_budget, rng);
      if (capacity_of(labels, remaining) < demand) labels = largest_labels(remaining, label_budget);
      const std::size_t cap = capacity_of(labels, remaining);
      if (cap < demand) {
        throw CapacityError("client " + std::to_string(k) + " needs " + std::to_string(demand) +
                            " samples but at most " + std::to_string(cap) + " remain within " +
                            std::to_string(label_budget) + " labels");
      }
      for (const auto& [label, n] : water_fill(labels, remaining, demand)) {
        auto& q = queues[label];
        for (std::size_t i = 0; i < n; ++i) {
          shard.indices.push_back(q.front());
          q.pop_front();
        }
      }
    } else {
      std::vector<int> all_labels;
      for (const auto& [label, q] : queues) all_labels.push_back(label);
      std::vector<int> labels;
      for (std::size_t pick : rng.sample_without_replacement(all_labels.size(), label_budget)) {
        labels.push_back(all_labels[pick]);
      }
      if (capacity_of(labels, full_count) < demand)
        labels = largest_labels(full_count, label_budget);
      const std::size_t cap = capacity_of(labels, full_count);
      if (cap < demand) {
        throw CapacityError("client " + std::to_string(k) + " needs " + std::to_string(demand) +
                            " samples but only " + std::to_string(cap) + " exist within " +
                            std::to_string(label_budget) + " labels");
      }
      std::sort(labels.begin(), labels.end());
      std::vector<std::size_t> pool;
      for (int l : labels) pool.insert(pool.end(), queues[l].begin(), queues[l].end());
      for (std::size_t pick : rng.sample_without_replacement(pool.size(), demand)) {
        shard.indices.push_back(pool[pick]);
      }
    }
    std::sort(shard.indices.begin(), shard.indices.end());
    shards.push_back(std::move(shard));
  }
  return shards;
}

}  // namespace paota
