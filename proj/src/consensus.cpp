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

#include "lpchain/consensus.hpp"

#include <string>

namespace lpchain {

Status ConsensusConfig::validate() const {
  if (n_supervisors < 1) return fail(Reason::InvalidConfig, "n_supervisors must be positive");
  if (k < 1) return fail(Reason::InvalidConfig, "k must be at least 1");
  if (threshold() > n_supervisors)
    return fail(Reason::InvalidConfig, "threshold " + std::to_string(threshold()) + " exceeds n_supervisors");
  if (freshness_window_ms <= 0 || consensus_timeout_ms <= 0)
    return fail(Reason::InvalidConfig, "windows must be positive");
  return ok_status();
}

Result<std::optional<ReadyQuorum>> PendingConsensus::accumulate(const DecisionAck& ack, const KeyDirectory& keys) {
  if (state_ != State::Collecting) return fail(Reason::AlreadyFinalized);
  if (!(ack.req == request_)) return fail(Reason::MismatchedRequest, ack.sn.value);
  if (ack.sig.signer != ack.sn || !keys.verify_as(ack.sig, signed_payload(ack), EntityRole::Supervisor))
    return fail(Reason::InvalidSignature, ack.sn.value);
  if (!seen_sn_.insert(ack.sn).second) return fail(Reason::DuplicateAck, ack.sn.value);

  arrival_.push_back(ack);
  auto key = std::make_pair(ack.witness_choice, ack.la_choice);
  if (++tally_[key] < threshold_) return std::optional<ReadyQuorum>{};

  state_ = State::Finalized;
  ReadyQuorum ready{request_, Selection{key.first, key.second}, {}};
  for (const auto& a : arrival_)
    if (a.witness_choice == key.first && a.la_choice == key.second) ready.acks.push_back(a);
  return std::optional<ReadyQuorum>(std::move(ready));
}

BroadcastRequest make_broadcast(const Identity& rrsn, const ProofRequest& preq, Timestamp now) {
  BroadcastRequest b{preq, now, {}, rrsn.id};
  b.sig_t = rrsn.sign(signed_payload(b));
  return b;
}

DecisionAck make_decision_ack(const Identity& sn, const BroadcastRequest& req, const Selection& pair, Timestamp now) {
  DecisionAck a{sn.id, now, pair.witness, pair.la, req, {}};
  a.sig = sn.sign(signed_payload(a));
  return a;
}

DecisionBlock build_decision_block(const Identity& rrsn, const ReadyQuorum& ready, Timestamp now) {
  DecisionBlock b;
  b.acks = ready.acks;
  b.witness = ready.pair.witness;
  b.la = ready.pair.la;
  b.rrsn = rrsn.id;
  b.t = now;
  b.sig = rrsn.sign(signed_payload(b));
  return b;
}

Digest compute_block_id(const DecisionBlock* prev, const DecisionBlock& block) {
  Bytes prev_body = prev ? block_body(*prev) : Bytes{};
  return chain_link(prev_body, block_body(block));
}

ApprovalMessage make_approval(const Identity& rrsn, const ProofRequest& preq, const DecisionBlock& block,
                              Timestamp now) {
  ApprovalMessage m{preq, block.id, block.witness, block.la, now, {}};
  m.sig = rrsn.sign(signed_payload(m));
  return m;
}

FinalizedDecision finalize_block(const Identity& rrsn, const ReadyQuorum& ready, const DecisionBlock* prev,
                                 Timestamp now) {
  DecisionBlock block = build_decision_block(rrsn, ready, now);
  block.id = compute_block_id(prev, block);
  ApprovalMessage approval = make_approval(rrsn, ready.request.preq, block, now);
  return {std::move(block), std::move(approval)};
}

Status check_proof_request(const KeyDirectory& keys, const ProofRequest& preq) {
  if (keys.role_of(preq.prover) != EntityRole::Mobile) return fail(Reason::UnknownProver, preq.prover.value);
  if (preq.sig.signer != preq.prover || !keys.verify(preq.sig, signed_payload(preq)))
    return fail(Reason::InvalidSignature, "proof request");
  return ok_status();
}

Status check_broadcast(const KeyDirectory& keys, const BroadcastRequest& req) {
  if (req.sig_t.signer != req.rrsn || !keys.verify_as(req.sig_t, signed_payload(req), EntityRole::Supervisor))
    return fail(Reason::InvalidSignature, "broadcast timestamp");
  return check_proof_request(keys, req.preq);
}

Result<BroadcastRequest> SupervisorNode::receive_proof_request(const ProofRequest& preq, Timestamp now) {
  if (auto s = check_proof_request(*keys_, preq); !s) return s.failure();
  seen_requests_.insert(digest_of(preq));
  return make_broadcast(self_, preq, now);
}

Status SupervisorNode::admit(const BroadcastRequest& req, Timestamp now) {
  if (now - req.t_rrsn > config_.freshness_window_ms) return fail(Reason::StaleRequest);
  if (auto s = check_broadcast(*keys_, req); !s) return s;
  seen_requests_.insert(digest_of(req.preq));
  return ok_status();
}

Result<DecisionAck> SupervisorNode::evaluate_request(const BroadcastRequest& req, Timestamp now) {
  if (auto s = admit(req, now); !s) return s.failure();
  auto pair = registry_.select_participants(req.preq.prover, req.preq.loc, now);
  if (!pair) return pair.failure();
  DecisionAck ack = make_decision_ack(self_, req, *pair, now);
  own_acks_.insert_or_assign(digest_of(req.preq), ack);
  return ack;
}

Result<DecisionAck> SupervisorNode::evaluate_request_with(const BroadcastRequest& req, const Selection& pair,
                                                          Timestamp now) {
  if (auto s = admit(req, now); !s) return s.failure();
  DecisionAck ack = make_decision_ack(self_, req, pair, now);
  own_acks_.insert_or_assign(digest_of(req.preq), ack);
  return ack;
}

Result<std::optional<ReadyQuorum>> SupervisorNode::accumulate_ack(const DecisionAck& ack) {
  if (ack.req.rrsn != self_.id) return fail(Reason::MismatchedRequest, "ack addressed to another RRSN");
  Digest key = digest_of(ack.req.preq);
  auto it = pending_.find(key);
  if (it == pending_.end()) it = pending_.emplace(key, PendingConsensus(ack.req, config_.threshold())).first;
  return it->second.accumulate(ack, *keys_);
}

PendingConsensus* SupervisorNode::pending(const ProofRequest& preq) {
  auto it = pending_.find(digest_of(preq));
  return it == pending_.end() ? nullptr : &it->second;
}

bool SupervisorNode::expire(const ProofRequest& preq) {
  PendingConsensus* p = pending(preq);
  if (p == nullptr) return true;
  p->fail_timeout();
  return p->state() == PendingConsensus::State::Failed;
}

FinalizedDecision SupervisorNode::finalize_block(const ReadyQuorum& ready, const DecisionBlock* prev,
                                                 Timestamp now) const {
  return lpchain::finalize_block(self_, ready, prev, now);
}

Status SupervisorNode::validate_decision_block(const DecisionBlock& block) const {
  if (block.sig.signer != block.rrsn ||
      !keys_->verify_as(block.sig, signed_payload(block), EntityRole::Supervisor))
    return fail(Reason::InvalidBlockSignature);
  for (const auto& ack : block.acks)
    if (ack.sig.signer != ack.sn || !keys_->verify_as(ack.sig, signed_payload(ack), EntityRole::Supervisor))
      return fail(Reason::InvalidAckSignature, ack.sn.value);

  if (block.acks.empty()) return fail(Reason::InsufficientQuorum, "no acks");
  const BroadcastRequest& req = block.acks.front().req;
  std::set<EntityId> signers;
  for (const auto& ack : block.acks) {
    if (ack.witness_choice != block.witness || ack.la_choice != block.la)
      return fail(Reason::AckChoiceMismatch, ack.sn.value);
    if (!(ack.req == req) || req.rrsn != block.rrsn) return fail(Reason::MismatchedRequest, ack.sn.value);
    signers.insert(ack.sn);
  }
  if (static_cast<int>(signers.size()) < config_.threshold())
    return fail(Reason::InsufficientQuorum,
                std::to_string(signers.size()) + " of " + std::to_string(config_.threshold()));

  Digest request_key = digest_of(req.preq);
  if (auto own = own_acks_.find(request_key); own != own_acks_.end()) {
    for (const auto& ack : block.acks)
      if (ack.sn == self_.id && encode(ack) != encode(own->second))
        return fail(Reason::ContributedAckAltered);
  }
  if (!seen_requests_.count(request_key)) return fail(Reason::UnknownRequest);
  return ok_status();
}

}  // namespace lpchain
