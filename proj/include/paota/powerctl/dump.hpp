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

#include <cstdint>
#include <string>

#include "paota/powerctl/dinkelbach.hpp"
#include "paota/powerctl/fqp.hpp"

namespace paota {

/// One-line JSON record of a round's problem and (optionally) its solution,
/// for offline inspection and oracle replay.
std::string dump_fqp(const FractionalQP& fqp, const DinkelbachResult* solution = nullptr,
                     std::uint64_t round = 0);

/// Rebuilds the problem from the provenance stored by dump_fqp.
FractionalQP load_fqp(const std::string& record);

}  // namespace paota
