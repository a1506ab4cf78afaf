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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lpchain/sim/scenario.hpp"

namespace lpchain::bench {

enum class SweepVariable { WorkerCount, ConsensusK, KeySize, ConcurrentRequests };

std::string_view to_string(SweepVariable v);
Result<SweepVariable> sweep_variable_from(std::string_view name);

struct SweepSpec {
  SweepVariable variable = SweepVariable::WorkerCount;
  std::vector<std::int64_t> values;
  int repetitions = 1;
  sim::ScenarioConfig base;

  Status validate() const;
};

// Sweep files are YAML: variable, values, repetitions and a base scenario
// map (same keys as a scenario file).
Result<SweepSpec> parse_sweep(std::string_view text);
Result<SweepSpec> load_sweep(const std::filesystem::path& path);

// Window in which a concurrent batch of n requests reaches the RRSN:
// linear between 5 requests in 28 ms and 100 requests in 920 ms.
double request_window_ms(std::int64_t n);

// Scenario for one repetition of one sweep point.
sim::ScenarioConfig point_config(const SweepSpec& spec, std::int64_t value, int repetition);

struct MetricRow {
  std::string sweep_variable;
  std::int64_t sweep_value = 0;
  std::uint64_t seed = 0;
  std::string config_digest;
  std::int64_t runs = 0;
  std::int64_t committed = 0;
  std::int64_t rejected = 0;
  std::int64_t aborted = 0;
  double ddt_virtual_mean_ms = 0;
  double ddt_virtual_min_ms = 0;
  double ddt_virtual_max_ms = 0;
  double ddt_wall_mean_ms = 0;
  double ddt_wall_min_ms = 0;
  double ddt_wall_max_ms = 0;
  double pgt_virtual_mean_ms = 0;
  double pgt_wall_mean_ms = 0;
  std::int64_t proof_bytes = 0;
  std::int64_t block_bytes = 0;
  double request_interval_ms = 0;
  // Set when the point could not be run; the counters are then zero.
  std::string error;

  bool operator==(const MetricRow&) const = default;
};

// Column names in export order.
const std::vector<std::string_view>& metric_columns();

// Aggregates finished runs into a row. Aborted counts every outcome that
// is neither committed nor rejected at the ledger.
MetricRow summarize(std::string_view variable, std::int64_t value, const sim::ScenarioConfig& config,
                    const std::vector<std::vector<sim::ProtocolOutcome>>& runs);

// One row per value; a failing point yields a row with error set.
std::vector<MetricRow> run_sweep(const SweepSpec& spec);

enum class Format { Csv, JsonLines };
Result<Format> format_from(std::string_view name);

void write_rows(std::ostream& os, const std::vector<MetricRow>& rows, Format format);
Result<std::vector<MetricRow>> read_rows(std::istream& is, Format format);
// Per-instance outcomes with the same formats. Wall-clock columns are
// written only when with_wall is set so that virtual runs stay byte-stable.
void write_outcomes(std::ostream& os, const std::vector<sim::ProtocolOutcome>& outcomes, Format format,
                    bool with_wall);

Status export_rows(const std::vector<MetricRow>& rows, Format format, const std::filesystem::path& path);

}  // namespace lpchain::bench
