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

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "lpchain/ledger.hpp"
#include "lpchain/sim/scenario.hpp"

namespace lpchain::sim {

struct KeyListing {
  std::string label;
  EntityRole role;
  EntityId id;
};

// A deterministic discrete-event world: supervisor nodes with their
// registries and chains, workers, provers and the virtual network.
class World {
 public:
  struct Impl;

  explicit World(std::unique_ptr<Impl> impl);
  ~World();
  World(World&&) noexcept;
  World& operator=(World&&) noexcept;

  const ScenarioConfig& config() const;
  const KeyDirectory& keys() const;
  std::vector<KeyListing> key_listing() const;

  int n_supervisors() const;
  bool compromised(int node) const;
  // Index of the first honest supervisor node.
  int honest_node() const;
  const SupervisorNode& supervisor(int node) const;
  const DecisionChain& decision_chain(int node) const;
  const ProvenanceChain& provenance_chain(int node) const;
  BlockAcceptance acceptance() const;

  const std::vector<ProtocolOutcome>& outcomes() const;
  // Proof held by the instance's claimant after the run, if any.
  const AssertedLocationProof* presented_proof(std::uint64_t instance) const;

  bool trace_enabled() const;
  void set_trace(bool enabled);
  const std::vector<std::string>& trace() const;
  void write_trace(std::ostream& os) const;

  Impl& impl() { return *impl_; }

 private:
  std::unique_ptr<Impl> impl_;
};

Result<World> build_world(const ScenarioConfig& config);

// Replaces the world's adversary flags before it runs.
Status inject_attack(World& world, const AdversaryBehavior& behavior);

// Drains the event queue. Fails with NonTermination when the event budget
// runs out and with ForkDetected when honest replicas diverge.
Result<std::vector<ProtocolOutcome>> run(World& world);

// build_world followed by run.
Result<std::vector<ProtocolOutcome>> run_scenario(const ScenarioConfig& config);

}  // namespace lpchain::sim
