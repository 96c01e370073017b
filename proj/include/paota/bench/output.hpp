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
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "paota/bench/config.hpp"
#include "paota/scheduler/engine.hpp"

namespace paota {

inline constexpr const char* kCsvHeader =
    "round,clock_s,n_participants,train_loss,test_acc,sum_alpha_sq,g_term_d,g_term_e,empty_round";

void write_csv(std::ostream& out, std::span<const RoundRecord> records);
/// One JSON object per participant per round. Optimiser fields (rho, theta,
/// beta) are written only for PAOTA.
void write_participants_jsonl(std::ostream& out, std::span<const RoundRecord> records,
                              Algorithm algorithm);

/// Writes <stem>.csv and <stem>.jsonl, creating parent directories.
void write_run_files(const std::filesystem::path& stem, std::span<const RoundRecord> records,
                     Algorithm algorithm);

inline constexpr std::size_t kAccuracySmoothing = 3;

struct AccuracyCrossing {
  double target = 0.0;
  std::optional<std::size_t> round;  // nullopt when the target is never reached
  std::optional<double> clock;
};

/// Trailing moving average of test accuracy over up to `window` rounds.
std::vector<double> smoothed_accuracy(std::span<const RoundRecord> records,
                                      std::size_t window = kAccuracySmoothing);

std::vector<AccuracyCrossing> time_to_accuracy(std::span<const RoundRecord> records,
                                               std::span<const double> targets,
                                               std::size_t window = kAccuracySmoothing);

struct TtaRow {
  std::string label;
  std::vector<AccuracyCrossing> crossings;
  double final_accuracy = 0.0;
};

void write_tta_markdown(std::ostream& out, std::span<const double> targets,
                        std::span<const TtaRow> rows);

}  // namespace paota
