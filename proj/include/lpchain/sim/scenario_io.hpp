// Copyright 2026 The lpchain Authors
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

#include <filesystem>
#include <string>
#include <string_view>

#include "lpchain/crypto.hpp"
#include "lpchain/sim/scenario.hpp"

namespace lpchain::sim {

// Scenario files are YAML maps keyed by ScenarioConfig field names. Unknown
// keys are rejected so typos do not silently fall back to defaults.
Result<ScenarioConfig> parse_scenario(std::string_view text);
Result<ScenarioConfig> load_scenario(const std::filesystem::path& path);

// Full dump including defaults; parse_scenario(dump_scenario(c)) == c.
std::string dump_scenario(const ScenarioConfig& config);

// Digest of the canonical dump.
Digest config_digest(const ScenarioConfig& config);

std::string_view to_string(SupervisorAttack a);

}  // namespace lpchain::sim
