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
#include <unordered_map>

#include "lpchain/bench.hpp"
#include "lpchain/ledger.hpp"
#include "lpchain/sim/world.hpp"

namespace lpchain::sim {

// Layout of a run directory:
//   scenario.yaml      resolved scenario
//   keys.txt           "label role entity-id" per line
//   decisions.chain    decision chain of the first honest node
//   provenance.chain   provenance chain of the same node
//   acceptance.txt     "nodes N" then "block-id count" per accepted block
//   proofs/<i>.hex     proof held by instance i after the run
//   outcomes.<fmt>     per-instance outcomes
//   trace.jsonl        event trace
Status write_run_artifacts(const World& world, const std::filesystem::path& dir, bench::Format format);

struct ChainDir {
  KeyDirectory keys;
  DecisionChain decisions;
  ProvenanceChain provenance;
  int n_nodes = 1;
  std::unordered_map<Digest, int, DigestHash> accepted;

  // Refers to this object; keep it alive while the result is used.
  BlockAcceptance acceptance() const;
};

Result<ChainDir> load_chain_dir(const std::filesystem::path& dir);

// A proof file holds the hex of the proof's canonical encoding.
Status write_proof_file(const std::filesystem::path& path, const AssertedLocationProof& alp);
Result<AssertedLocationProof> read_proof_file(const std::filesystem::path& path);

}  // namespace lpchain::sim
