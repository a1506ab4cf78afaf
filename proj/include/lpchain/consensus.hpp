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

#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "lpchain/keys.hpp"
#include "lpchain/messages.hpp"
#include "lpchain/registry.hpp"
#include "lpchain/result.hpp"

namespace lpchain {

struct ConsensusConfig {
  int n_supervisors = 15;
  int k = 1;
  std::int64_t freshness_window_ms = 30'000;
  std::int64_t consensus_timeout_ms = 10'000;

  // floor(N/2) + K matching acks.
  int threshold() const { return n_supervisors / 2 + k; }
  Status validate() const;
};

struct ReadyQuorum {
  BroadcastRequest request;
  Selection pair;
  std::vector<DecisionAck> acks;  // arrival order
};

// Acks collected by the receiving supervisor for one broadcast request.
class PendingConsensus {
 public:
  enum class State { Collecting, Finalized, Failed };

  PendingConsensus(BroadcastRequest request, int threshold)
      : request_(std::move(request)), threshold_(threshold) {}

  const BroadcastRequest& request() const { return request_; }
  State state() const { return state_; }
  std::size_t ack_count() const { return arrival_.size(); }

  // Returns the quorum the first time some pair reaches the threshold,
  // nullopt while still collecting.
  Result<std::optional<ReadyQuorum>> accumulate(const DecisionAck& ack, const KeyDirectory& keys);
  void fail_timeout() {
    if (state_ == State::Collecting) state_ = State::Failed;
  }

 private:
  BroadcastRequest request_;
  int threshold_;
  State state_ = State::Collecting;
  std::vector<DecisionAck> arrival_;
  std::set<EntityId> seen_sn_;
  std::map<std::pair<EntityId, EntityId>, int> tally_;
};

struct FinalizedDecision {
  DecisionBlock block;
  ApprovalMessage approval;
};

// Stateless protocol steps, usable by honest and adversarial nodes alike.

BroadcastRequest make_broadcast(const Identity& rrsn, const ProofRequest& preq, Timestamp now);
DecisionAck make_decision_ack(const Identity& sn, const BroadcastRequest& req, const Selection& pair, Timestamp now);
// Signed block whose id is not yet assigned.
DecisionBlock build_decision_block(const Identity& rrsn, const ReadyQuorum& ready, Timestamp now);
// id over the chained body of prev (empty for the first block) and this body.
Digest compute_block_id(const DecisionBlock* prev, const DecisionBlock& block);
ApprovalMessage make_approval(const Identity& rrsn, const ProofRequest& preq, const DecisionBlock& block,
                              Timestamp now);
FinalizedDecision finalize_block(const Identity& rrsn, const ReadyQuorum& ready, const DecisionBlock* prev,
                                 Timestamp now);

Status check_proof_request(const KeyDirectory& keys, const ProofRequest& preq);
Status check_broadcast(const KeyDirectory& keys, const BroadcastRequest& req);

// Per-node admin-layer state: the requests it has seen and the acks it sent.
class SupervisorNode {
 public:
  SupervisorNode(Identity self, const KeyDirectory& keys, ConsensusConfig config, RegistryConfig registry_config)
      : self_(std::move(self)), keys_(&keys), config_(config), registry_(registry_config) {}

  const EntityId& id() const { return self_.id; }
  const Identity& identity() const { return self_; }
  const ConsensusConfig& config() const { return config_; }
  Registry& registry() { return registry_; }
  const Registry& registry() const { return registry_; }

  Result<BroadcastRequest> receive_proof_request(const ProofRequest& preq, Timestamp now);

  // Validates and marks the request seen, then selects. An ack is produced
  // only when both a witness and an LA are eligible.
  Result<DecisionAck> evaluate_request(const BroadcastRequest& req, Timestamp now);
  // Same admission checks, but acks for the given pair instead of the
  // registry's choice.
  Result<DecisionAck> evaluate_request_with(const BroadcastRequest& req, const Selection& pair, Timestamp now);

  // Routes an ack to the pending consensus for its request, creating it if
  // this node is the request's RRSN.
  Result<std::optional<ReadyQuorum>> accumulate_ack(const DecisionAck& ack);
  PendingConsensus* pending(const ProofRequest& preq);
  // Marks a pending consensus failed; false when it already finalized.
  bool expire(const ProofRequest& preq);

  FinalizedDecision finalize_block(const ReadyQuorum& ready, const DecisionBlock* prev, Timestamp now) const;

  Status validate_decision_block(const DecisionBlock& block) const;

 private:
  Status admit(const BroadcastRequest& req, Timestamp now);

  Identity self_;
  const KeyDirectory* keys_;
  ConsensusConfig config_;
  Registry registry_;
  std::set<Digest> seen_requests_;
  std::unordered_map<Digest, DecisionAck, DigestHash> own_acks_;
  std::unordered_map<Digest, PendingConsensus, DigestHash> pending_;
};

}  // namespace lpchain
