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

#include "paota/bench/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "paota/core/errors.hpp"

namespace paota {

namespace {

// Shortest representation that round-trips, so files are byte-stable.
std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, std::span<const RoundRecord> records) {
  out << kCsvHeader << '\n';
  for (const RoundRecord& r : records) {
    out << r.r << ',' << num(r.clock) << ',' << r.participants.size() << ',' << num(r.train_loss)
        << ',' << num(r.test_acc) << ',' << num(r.sum_alpha_sq) << ',' << num(r.g_term_d) << ','
        << num(r.g_term_e) << ',' << (r.empty_round ? 1 : 0) << '\n';
  }
}

void write_participants_jsonl(std::ostream& out, std::span<const RoundRecord> records,
                              Algorithm algorithm) {
  using nlohmann::ordered_json;
  const bool optimizer = algorithm == Algorithm::kPaota;
  for (const RoundRecord& r : records) {
    for (const ParticipantRecord& p : r.participants) {
      ordered_json j;
      j["round"] = r.r;
      j["client"] = p.id;
      j["staleness"] = p.staleness;
      if (optimizer) {
        j["rho"] = p.rho;
        j["theta"] = p.theta;
        j["beta"] = p.beta;
      }
      j["p"] = p.p;
      j["alpha"] = p.alpha;
      j["h_re"] = p.h.real();
      j["h_im"] = p.h.imag();
      j["tx_energy"] = p.tx_energy;
      if (optimizer) j["solver_converged"] = r.solver_converged;
      out << j.dump() << '\n';
    }
  }
}

void write_run_files(const std::filesystem::path& stem, std::span<const RoundRecord> records,
                     Algorithm algorithm) {
  if (stem.has_parent_path()) std::filesystem::create_directories(stem.parent_path());
  std::filesystem::path csv = stem, jsonl = stem;
  csv += ".csv";
  jsonl += ".jsonl";
  std::ofstream c(csv, std::ios::binary);
  std::ofstream j(jsonl, std::ios::binary);
  if (!c || !j) throw ConfigError("cannot write output files at " + stem.string());
  write_csv(c, records);
  write_participants_jsonl(j, records, algorithm);
}

std::vector<double> smoothed_accuracy(std::span<const RoundRecord> records, std::size_t window) {
  if (window == 0) throw ConfigError("smoothing window must be positive");
  std::vector<double> out(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::size_t first = i + 1 >= window ? i + 1 - window : 0;
    double sum = 0.0;
    for (std::size_t j = first; j <= i; ++j) sum += records[j].test_acc;
    out[i] = sum / static_cast<double>(i + 1 - first);
  }
  return out;
}

std::vector<AccuracyCrossing> time_to_accuracy(std::span<const RoundRecord> records,
                                               std::span<const double> targets,
                                               std::size_t window) {
  if (records.empty()) throw ConfigError("time_to_accuracy: no records");
  const std::vector<double> acc = smoothed_accuracy(records, window);
  std::vector<AccuracyCrossing> out;
  for (double t : targets) {
    AccuracyCrossing c;
    c.target = t;
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i] >= t) {
        c.round = records[i].r;
        c.clock = records[i].clock;
        break;
      }
    }
    out.push_back(c);
  }
  return out;
}

void write_tta_markdown(std::ostream& out, std::span<const double> targets,
                        std::span<const TtaRow> rows) {
  out << "| algorithm |";
  for (double t : targets) out << ' ' << num(100.0 * t) << "% (s) |";
  out << " final acc |\n|---|";
  for (std::size_t i = 0; i < targets.size(); ++i) out << "---:|";
  out << "---:|\n";
  char buf[64];
  for (const TtaRow& row : rows) {
    out << "| " << row.label << " |";
    for (const AccuracyCrossing& c : row.crossings) {
      if (c.clock) {
        std::snprintf(buf, sizeof buf, " %.2f (r%zu) |", *c.clock, *c.round);
        out << buf;
      } else {
        out << " not reached |";
      }
    }
    std::snprintf(buf, sizeof buf, " %.2f%% |\n", 100.0 * row.final_accuracy);
    out << buf;
  }
}

}  // namespace paota
