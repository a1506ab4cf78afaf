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

#include "lpchain/sim/scenario.hpp"

#include <cmath>

namespace lpchain::sim {

namespace {

std::int64_t scaled(double base_us, int key_bits) {
  double f = static_cast<double>(key_bits) / 224.0;
  return std::llround(base_us * f * f);
}

}  // namespace

std::int64_t CostModel::sign_us(int key_bits) const { return scaled(sign_us_224, key_bits); }
std::int64_t CostModel::verify_us(int key_bits) const { return scaled(verify_us_224, key_bits); }

std::string_view to_string(RunVerdict v) {
  switch (v) {
    case RunVerdict::Committed: return "Committed";
    case RunVerdict::RejectedAtLedger: return "RejectedAtLedger";
    case RunVerdict::AbortedInProtocol: return "AbortedInProtocol";
    case RunVerdict::ConsensusFailed: return "ConsensusFailed";
  }
  return "?";
}

Status ScenarioConfig::validate() const {
  auto bad = [](std::string what) { return fail(Reason::InvalidConfig, std::move(what)); };
  if (auto s = consensus().validate(); !s) return s;
  if (!key_level_from_bits(key_size)) return bad("key_size must be one of 224, 256, 384, 521");
  if (compromised_supervisor_fraction < 0.0 || compromised_supervisor_fraction > 1.0)
    return bad("compromised_supervisor_fraction must lie in [0, 1]");
  if (compromised_supervisor_fraction >= 0.51 && !allow_compromised_majority)
    return bad("a compromised majority needs allow_compromised_majority");
  if (latency.p2p_min_ms < 0 || latency.p2p_min_ms > latency.p2p_max_ms || latency.broadcast_min_ms < 0 ||
      latency.broadcast_min_ms > latency.broadcast_max_ms)
    return bad("latency bounds must satisfy 0 <= min <= max");
  if (range_limit_m <= 0) return bad("range_limit must be positive");
  if (ping_interval_ms <= 0 || ping_timeout_ms <= 0) return bad("ping interval and timeout must be positive");
  if (warmup_ms < 0) return bad("warmup must be non-negative");
  if (step_timeout_ms <= 0 || localization_latency_ms < 0) return bad("protocol timings out of range");
  if (workers.empty() && (population.mobiles < 0 || population.location_authorities < 0 || population.area_m <= 0))
    return bad("population out of range");
  if (provers.empty() && (prover_generator.count < 0 || prover_generator.requests_each < 1))
    return bad("prover generator out of range");
  for (const auto& p : provers) {
    if (p.name.empty()) return bad("prover without a name");
    if (p.rrsn && (*p.rrsn < 0 || *p.rrsn >= n_supervisors)) return bad("prover rrsn out of range");
    for (auto t : p.request_offsets_ms)
      if (t < 0) return bad("negative request offset");
  }
  if (prover_generator.rrsn && (*prover_generator.rrsn < 0 || *prover_generator.rrsn >= n_supervisors))
    return bad("generator rrsn out of range");
  if (event_budget == 0) return bad("event_budget must be positive");
  return ok_status();
}

int ScenarioConfig::compromised_count() const {
  return static_cast<int>(std::ceil(compromised_supervisor_fraction * n_supervisors - 1e-9));
}

std::int64_t ScenarioConfig::effective_temporal_range_ms() const {
  if (temporal_range_ms) return *temporal_range_ms;
  auto max_latency = static_cast<std::int64_t>(std::ceil(latency.max_ms()));
  return 2 * (max_latency + localization_latency_ms) + 20;
}

std::int64_t ScenarioConfig::effective_response_delay_bound_ms() const {
  if (response_delay_bound_ms) return *response_delay_bound_ms;
  return static_cast<std::int64_t>(std::ceil(latency.max_ms())) + 20;
}

ConsensusConfig ScenarioConfig::consensus() const {
  return ConsensusConfig{n_supervisors, k, freshness_window_ms, consensus_timeout_ms};
}

RegistryConfig ScenarioConfig::registry() const { return RegistryConfig{ping_timeout_ms, range_limit_m, 1.0}; }

ServiceConfig ScenarioConfig::service() const {
  return ServiceConfig{localization_latency_ms, step_timeout_ms, range_limit_m, effective_response_delay_bound_ms(),
                       effective_temporal_range_ms()};
}

LedgerConfig ScenarioConfig::ledger() const { return LedgerConfig{effective_temporal_range_ms(), decision_skew_ms}; }

}  // namespace lpchain::sim
