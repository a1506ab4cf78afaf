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
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lpchain/keys.hpp"
#include "lpchain/messages.hpp"
#include "lpchain/result.hpp"

namespace lpchain {

// A stored entry is its chained body followed by the length-prefixed
// 32-byte link digest.
struct ChainLink {
  ByteView body;
  Digest digest;
};

// Splits a stored entry; nullopt when the trailer is malformed.
std::optional<ChainLink> split_entry(ByteView entry);
Bytes join_entry(ByteView body, const Digest& d);

// Recomputes every link. Returns the first position whose stored digest does
// not match, or nullopt when the whole chain is intact.
std::optional<std::size_t> audit_chain(std::span<const Bytes> entries);

class DecisionChain {
 public:
  // The block id must chain onto the current head.
  Status append_decision(const DecisionBlock& block);

  const DecisionBlock* find(const Digest& id) const;
  const DecisionBlock* head() const { return blocks_.empty() ? nullptr : &blocks_.back(); }
  std::size_t size() const { return blocks_.size(); }
  const std::vector<DecisionBlock>& blocks() const { return blocks_; }

  std::vector<Bytes> entries() const;
  // Rebuilds a chain from stored entries, re-checking every link.
  static Result<DecisionChain> from_entries(std::span<const Bytes> entries);

 private:
  std::vector<DecisionBlock> blocks_;
  std::unordered_map<Digest, std::size_t, DigestHash> index_;
};

struct LedgerConfig {
  // Bound on T_AStat minus the prover's request time to the LA.
  std::int64_t temporal_range_ms = 1'000;
  // Bound on |T_ALP - T_DB|.
  std::int64_t decision_skew_ms = 10'000;
};

// Counts how many supervisor nodes hold a block on their decision chain.
struct BlockAcceptance {
  int n_nodes = 1;
  std::function<int(const Digest&)> accepted_by;

  bool majority(const Digest& id) const { return 2 * accepted_by(id) > n_nodes; }
};

class ProvenanceChain {
 public:
  struct Entry {
    AckAlpFinal record;
    Digest digest;
    Digest alp_digest;
  };

  // Admits a finalized acknowledgement. now is the committing node's clock.
  Status append_proof(const AckAlpFinal& proof, const DecisionChain& decisions, const KeyDirectory& keys,
                      const LedgerConfig& config, Timestamp now);

  const Entry* find_by_alp(const Digest& alp_digest) const;
  std::vector<const Entry*> for_prover(const EntityId& prover) const;
  bool block_used(const Digest& block_id) const { return used_blocks_.count(block_id) != 0; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& records() const { return entries_; }

  std::vector<Bytes> entries() const;
  static Result<ProvenanceChain> from_entries(std::span<const Bytes> entries);

 private:
  void push(AckAlpFinal record, const Digest& link);

  std::vector<Entry> entries_;
  std::unordered_map<Digest, std::size_t, DigestHash> by_alp_;
  std::unordered_map<Digest, std::size_t, DigestHash> used_blocks_;
  std::unordered_map<EntityId, std::vector<std::size_t>, EntityIdHash> by_prover_;
};

// Signature, nesting, participant and timestamp checks on a proof, shared by
// append_proof and verify_third_party. block must be the referenced block.
Status check_signatures(const AssertedLocationProof& alp, const KeyDirectory& keys);
Status check_participants(const AssertedLocationProof& alp, const DecisionBlock& block);
Status check_timestamps(const AssertedLocationProof& alp, const DecisionBlock& block, Timestamp t_ack,
                        const LedgerConfig& config);

// Valid iff the proof verifies, its block is held by a majority of nodes,
// participants match the block, and it is on the provenance chain.
Status verify_third_party(const AssertedLocationProof& alp, const DecisionChain& decisions,
                          const ProvenanceChain& provenance, const KeyDirectory& keys,
                          const BlockAcceptance& acceptance, const LedgerConfig& config);

enum class ChainKind { Decision, Provenance };

std::string_view to_string(ChainKind k);

struct ChainFile {
  ChainKind kind;
  std::vector<Bytes> entries;
};

// Append-only text file: a header line "<kind> <hash>" then one hex entry
// per line.
class ChainWriter {
 public:
  ChainWriter(const std::filesystem::path& path, ChainKind kind);
  void append(ByteView entry);

 private:
  std::filesystem::path path_;
};

void write_chain_file(const std::filesystem::path& path, ChainKind kind, std::span<const Bytes> entries);
// Throws lpchain::Error (IoError or ParseError).
ChainFile read_chain_file(const std::filesystem::path& path);

}  // namespace lpchain
