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
#include <unordered_set>

#include "lpchain/keys.hpp"
#include "lpchain/messages.hpp"
#include "lpchain/result.hpp"

namespace lpchain {

struct ServiceConfig {
  std::int64_t localization_latency_ms = 150;
  std::int64_t step_timeout_ms = 5'000;
  double localization_range_m = 100.0;
  // Per-hop bound on message delay, excluding localization time. The LA
  // allows one hop since the prover stamped its request, the witness two.
  std::int64_t response_delay_bound_ms = 100;
  // Bound on T_AStat minus the prover's request time, checked by the LA
  // before forwarding an asserted proof.
  std::int64_t temporal_range_ms = 1'000;
};

// Simulated secure localization: a range predicate against ground truth.
struct LocalizationCheck {
  GeoPoint claimed;
  GeoPoint observed;
  double range = 0.0;

  bool passes() const { return distance(claimed, observed) <= range; }
};

// Signed by a registered supervisor node.
Status check_approval(const KeyDirectory& keys, const ApprovalMessage& approval);

enum class ProtocolStep {
  Idle,
  AwaitingApproval,
  AwaitingProof,
  AwaitingVerification,
  Acknowledged,
  ProofIssued,
  Finalized,
  Asserted,
  Aborted,
};

std::string_view to_string(ProtocolStep s);

class ProverAgent {
 public:
  ProverAgent(Identity self, const KeyDirectory& keys) : self_(std::move(self)), keys_(&keys) {}

  const EntityId& id() const { return self_.id; }
  const Identity& identity() const { return self_; }
  ProtocolStep step() const { return step_; }

  ProofRequest make_request(GeoPoint claimed, Timestamp now);
  Result<LocationProofRequest> prover_start(const ApprovalMessage& approval, Timestamp now);
  Result<VerificationRequest> prover_verify(const AssertedLocationProof& alp, Timestamp now);
  Result<AckAlp> prover_ack(const AssertedLocationProof& alp, const VerificationResponse& vr, Timestamp now);
  void abort() { step_ = ProtocolStep::Aborted; }

 private:
  Identity self_;
  const KeyDirectory* keys_;
  ProtocolStep step_ = ProtocolStep::Idle;
  std::optional<ApprovalMessage> approval_;
};

class LocationAuthorityAgent {
 public:
  LocationAuthorityAgent(Identity self, const KeyDirectory& keys, ServiceConfig config)
      : self_(std::move(self)), keys_(&keys), config_(config) {}

  const EntityId& id() const { return self_.id; }
  const Identity& identity() const { return self_; }

  // Copy of an approval sent directly by the RRSN.
  void receive_approval(const ApprovalMessage& approval);

  // observed is the prover's true position as measured by localization.
  Result<AssertionRequest> la_issue_proof(const LocationProofRequest& lpreq, GeoPoint observed, Timestamp now);
  Result<AssertedLocationProof> la_forward_alp(const AssertedLocationProof& alp, Timestamp now) const;
  Result<AckAlpFinal> la_finalize(const AckAlp& ack_alp, Timestamp now);

  ProtocolStep step(const Digest& block_id) const;

 private:
  Identity self_;
  const KeyDirectory* keys_;
  ServiceConfig config_;
  std::unordered_map<Digest, ApprovalMessage, DigestHash> received_;
  std::unordered_map<Digest, ProtocolStep, DigestHash> served_;
};

class WitnessAgent {
 public:
  WitnessAgent(Identity self, const KeyDirectory& keys, ServiceConfig config)
      : self_(std::move(self)), keys_(&keys), config_(config) {}

  const EntityId& id() const { return self_.id; }
  const Identity& identity() const { return self_; }

  void receive_approval(const ApprovalMessage& approval);

  Result<AssertedLocationProof> witness_assert(const AssertionRequest& areq, GeoPoint observed, Timestamp now);
  // Yes iff the ALP is one this witness produced.
  VerificationResponse witness_answer(const VerificationRequest& vreq, Timestamp now) const;

  bool produced(const Digest& alp_digest) const { return produced_.count(alp_digest) != 0; }

 private:
  Identity self_;
  const KeyDirectory* keys_;
  ServiceConfig config_;
  std::unordered_map<Digest, ApprovalMessage, DigestHash> received_;
  std::unordered_set<Digest, DigestHash> produced_;
};

// Unchecked message constructors. Agents use them after validation; the
// adversary uses them directly.
LocationProofRequest build_lpreq(const ApprovalMessage& approval, Timestamp t_request);
AssertionRequest build_assertion_request(const Identity& la, const LocationProofRequest& lpreq, Timestamp t_ls);
AssertedLocationProof build_alp(const Identity& signer, const AssertionRequest& areq, const EntityId& named_witness,
                                Timestamp t_astat, Timestamp t_alp);
VerificationResponse build_verification(const Identity& witness, Verdict r, const Digest& h_alp, Timestamp t_v);
AckAlp build_ack(const Identity& prover, const AssertedLocationProof& alp, const VerificationResponse& vr,
                 Timestamp t_ack);
AckAlpFinal build_final(const Identity& la, const AckAlp& ack_alp);

}  // namespace lpchain
