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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpchain/consensus.hpp"
#include "lpchain/ledger.hpp"
#include "lpchain/registry.hpp"
#include "lpchain/result.hpp"
#include "lpchain/service.hpp"
#include "lpchain/types.hpp"

namespace lpchain::sim {

struct LatencyModel {
  // Uniform point-to-point and admin-layer broadcast delays.
  double p2p_min_ms = 1.0;
  double p2p_max_ms = 10.0;
  double broadcast_min_ms = 1.0;
  double broadcast_max_ms = 10.0;

  double max_ms() const { return std::max(p2p_max_ms, broadcast_max_ms); }
  bool operator==(const LatencyModel&) const = default;
};

// Virtual processing cost charged to an entity's executor.
struct CostModel {
  double sign_us_224 = 60.0;
  double verify_us_224 = 120.0;
  double scan_us_per_worker = 5.0;

  // Scales quadratically with key size.
  std::int64_t sign_us(int key_bits) const;
  std::int64_t verify_us(int key_bits) const;
  bool operator==(const CostModel&) const = default;
};

struct ProverFlags {
  bool tamper_proof = false;
  bool replay_old_approval = false;
  bool fabricate_approval = false;
  std::int64_t wormhole_relay_ms = 0;
  // Distance between the claimed and true position, in meters.
  double false_presence_m = 0.0;
  // Request timestamp shifted into the past.
  std::int64_t back_date_ms = 0;
  // Recruit a low-priority LA and witness as accomplices.
  bool recruit_accomplices = false;

  bool any() const {
    return tamper_proof || replay_old_approval || fabricate_approval || wormhole_relay_ms > 0 ||
           false_presence_m > 0 || back_date_ms > 0 || recruit_accomplices;
  }
  bool operator==(const ProverFlags&) const = default;
};

struct WitnessFlags {
  // Assert without localizing the prover.
  bool false_endorsement = false;
  std::int64_t false_time_offset_ms = 0;

  bool any() const { return false_endorsement || false_time_offset_ms != 0; }
  bool operator==(const WitnessFlags&) const = default;
};

struct LaFlags {
  bool deny_service = false;
  // Withhold the proof from the prover and forge its acknowledgement.
  bool implicate_prover = false;
  // Skip localization and have an unregistered puppet assert instead of
  // the designated witness.
  bool relay_to_puppet = false;
  // Skip localization.
  bool false_assertion = false;

  bool any() const { return deny_service || implicate_prover || relay_to_puppet || false_assertion; }
  bool operator==(const LaFlags&) const = default;
};

enum class SupervisorAttack {
  None,
  // Compromised nodes ack the prover's chosen pair.
  EchoPair,
  // A compromised node signs an approval for a block that does not exist.
  FabricateApproval,
  // A compromised RRSN finalizes the prover's pair on compromised acks only.
  SubstitutePair,
};

struct SupervisorFlags {
  SupervisorAttack attack = SupervisorAttack::None;

  bool any() const { return attack != SupervisorAttack::None; }
  bool operator==(const SupervisorFlags&) const = default;
};

struct AdversaryBehavior {
  ProverFlags prover;
  WitnessFlags witness;
  LaFlags la;
  SupervisorFlags supervisor;

  bool any() const { return prover.any() || witness.any() || la.any() || supervisor.any(); }
  bool operator==(const AdversaryBehavior&) const = default;
};

struct WorkerSpec {
  std::string name;
  WorkerRole role = WorkerRole::Mobile;
  GeoPoint position;
  bool honest = true;
  bool operator==(const WorkerSpec&) const = default;
};

struct ProverSpec {
  std::string name;
  // Claimed location. Generated near a location authority when absent.
  std::optional<GeoPoint> position;
  bool honest = true;
  // Request creation times, ms after warmup.
  std::vector<std::int64_t> request_offsets_ms = {0};
  // Supervisor index receiving the requests; round-robin when absent.
  std::optional<int> rrsn;
  bool operator==(const ProverSpec&) const = default;
};

// Generated population, used when workers is empty.
struct PopulationSpec {
  int mobiles = 375;
  int location_authorities = 25;
  double area_m = 500.0;
  // Share of generated workers marked dishonest, chosen by the seed.
  double dishonest_mobile_fraction = 0.0;
  double dishonest_la_fraction = 0.0;
  bool operator==(const PopulationSpec&) const = default;
};

// Generated provers, used when provers is empty.
struct ProverGenerator {
  int count = 1;
  int requests_each = 1;
  std::int64_t request_spacing_ms = 5'000;
  // When positive, all first requests land uniformly inside this window.
  std::int64_t concurrent_window_ms = 0;
  std::optional<int> rrsn;
  bool honest = true;
  bool operator==(const ProverGenerator&) const = default;
};

struct ScenarioConfig {
  std::uint64_t seed = 1;
  // Seeds key derivation independently of the scenario seed.
  std::uint64_t key_seed = 0;
  int n_supervisors = 15;
  int k = 1;
  int key_size = 224;

  std::vector<WorkerSpec> workers;
  PopulationSpec population;
  std::vector<ProverSpec> provers;
  ProverGenerator prover_generator;

  LatencyModel latency;
  CostModel cost;
  double range_limit_m = 100.0;
  std::int64_t ping_interval_ms = 10'000;
  std::int64_t ping_timeout_ms = 60'000;
  std::int64_t warmup_ms = 60'000;

  std::int64_t freshness_window_ms = 30'000;
  std::int64_t consensus_timeout_ms = 10'000;
  std::int64_t decision_skew_ms = 10'000;
  std::int64_t localization_latency_ms = 150;
  std::int64_t step_timeout_ms = 5'000;
  // Derived from the latency model when absent.
  std::optional<std::int64_t> temporal_range_ms;
  std::optional<std::int64_t> response_delay_bound_ms;

  // 0 means custom flags; 1..8 are the collusion cases.
  int attack_case = 1;
  AdversaryBehavior behavior;
  double compromised_supervisor_fraction = 0.0;
  bool allow_compromised_majority = false;

  std::uint64_t event_budget = 20'000'000;
  bool wall_time = false;

  Status validate() const;

  int compromised_count() const;
  std::int64_t effective_temporal_range_ms() const;
  std::int64_t effective_response_delay_bound_ms() const;
  ConsensusConfig consensus() const;
  RegistryConfig registry() const;
  ServiceConfig service() const;
  LedgerConfig ledger() const;

  bool operator==(const ScenarioConfig&) const = default;
};

enum class RunVerdict { Committed, RejectedAtLedger, AbortedInProtocol, ConsensusFailed };

std::string_view to_string(RunVerdict v);

struct ProtocolOutcome {
  std::uint64_t instance = 0;
  std::string prover;
  RunVerdict verdict = RunVerdict::AbortedInProtocol;
  std::optional<Reason> reason;
  bool attacked = false;

  double ddt_virtual_ms = 0;
  double pgt_virtual_ms = 0;
  double ddt_wall_ms = 0;
  double pgt_wall_ms = 0;
  bool has_ddt = false;
  bool has_pgt = false;
  // Virtual time the request reached its RRSN, or -1.
  double arrival_ms = -1;

  std::size_t proof_bytes = 0;
  std::size_t block_bytes = 0;

  // Third-party check of the proof the attacker (or honest prover) holds.
  bool presented = false;
  bool third_party_valid = false;
  std::optional<Reason> detection_reason;

  bool fake_accepted() const { return attacked && third_party_valid; }
  bool attack_detected() const { return attacked && !third_party_valid; }
};

}  // namespace lpchain::sim
