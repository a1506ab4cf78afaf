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

#include "lpchain/service.hpp"

#include <string>

namespace lpchain {

std::string_view to_string(ProtocolStep s) {
  switch (s) {
    case ProtocolStep::Idle: return "idle";
    case ProtocolStep::AwaitingApproval: return "awaiting_approval";
    case ProtocolStep::AwaitingProof: return "awaiting_proof";
    case ProtocolStep::AwaitingVerification: return "awaiting_verification";
    case ProtocolStep::Acknowledged: return "acknowledged";
    case ProtocolStep::ProofIssued: return "proof_issued";
    case ProtocolStep::Finalized: return "finalized";
    case ProtocolStep::Asserted: return "asserted";
    case ProtocolStep::Aborted: return "aborted";
  }
  return "?";
}

Status check_approval(const KeyDirectory& keys, const ApprovalMessage& approval) {
  if (!keys.verify_as(approval.sig, signed_payload(approval), EntityRole::Supervisor))
    return fail(Reason::InvalidApproval, "approval not signed by a supervisor node");
  return ok_status();
}

LocationProofRequest build_lpreq(const ApprovalMessage& approval, Timestamp t_request) {
  return LocationProofRequest{approval, t_request};
}

AssertionRequest build_assertion_request(const Identity& la, const LocationProofRequest& lpreq, Timestamp t_ls) {
  AssertionRequest areq{LocationProof{la.id, lpreq, t_ls}, {}};
  areq.sig = la.sign(signed_payload(areq));
  return areq;
}

AssertedLocationProof build_alp(const Identity& signer, const AssertionRequest& areq, const EntityId& named_witness,
                                Timestamp t_astat, Timestamp t_alp) {
  const auto& approval = areq.lp.lpreq.approval;
  AssertionResponse ar;
  ar.astat = AssertionStatement{approval.block_id, approval.preq.prover, areq.lp.la, named_witness,
                                digest_of(areq), t_astat};
  ar.sig = signer.sign(signed_payload(ar));
  return AssertedLocationProof{areq, std::move(ar), t_alp};
}

VerificationResponse build_verification(const Identity& witness, Verdict r, const Digest& h_alp, Timestamp t_v) {
  VerificationResponse vr{Verification{r, h_alp, t_v}, {}};
  vr.sig = witness.sign(signed_payload(vr));
  return vr;
}

AckAlp build_ack(const Identity& prover, const AssertedLocationProof& alp, const VerificationResponse& vr,
                 Timestamp t_ack) {
  AckAlp a{Acknowledgement{alp, vr, alp.ar.astat.block_id, t_ack}, {}};
  a.sig = prover.sign(signed_payload(a));
  return a;
}

AckAlpFinal build_final(const Identity& la, const AckAlp& ack_alp) {
  AckAlpFinal f{ack_alp, {}};
  f.sig = la.sign(signed_payload(f));
  return f;
}

ProofRequest ProverAgent::make_request(GeoPoint claimed, Timestamp now) {
  ProofRequest preq{self_.id, now, claimed, {}};
  preq.sig = self_.sign(signed_payload(preq));
  step_ = ProtocolStep::AwaitingApproval;
  return preq;
}

Result<LocationProofRequest> ProverAgent::prover_start(const ApprovalMessage& approval, Timestamp now) {
  if (approval.preq.prover != self_.id) return fail(Reason::ApprovalNotForMe, approval.preq.prover.value);
  if (!keys_->verify_as(approval.sig, signed_payload(approval), EntityRole::Supervisor))
    return fail(Reason::InvalidSignature, "approval");
  approval_ = approval;
  step_ = ProtocolStep::AwaitingProof;
  return build_lpreq(approval, now);
}

Result<VerificationRequest> ProverAgent::prover_verify(const AssertedLocationProof& alp, Timestamp now) {
  if (!approval_) return fail(Reason::InvalidApproval, "no approval held");
  if (!(alp.areq.lp.lpreq.approval == *approval_)) return fail(Reason::InvalidApproval, "proof for another approval");
  step_ = ProtocolStep::AwaitingVerification;
  return VerificationRequest{alp, now};
}

Result<AckAlp> ProverAgent::prover_ack(const AssertedLocationProof& alp, const VerificationResponse& vr,
                                       Timestamp now) {
  if (!approval_) return fail(Reason::InvalidApproval, "no approval held");
  if (vr.sig.signer != approval_->witness || !keys_->verify(vr.sig, signed_payload(vr)))
    return fail(Reason::InvalidSignature, "verification response");
  if (vr.v.r != Verdict::Yes || vr.v.h_alp != digest_of(alp)) {
    step_ = ProtocolStep::Aborted;
    return fail(Reason::WitnessSaidNo);
  }
  step_ = ProtocolStep::Acknowledged;
  return build_ack(self_, alp, vr, now);
}

void LocationAuthorityAgent::receive_approval(const ApprovalMessage& approval) {
  received_.insert_or_assign(approval.block_id, approval);
}

Result<AssertionRequest> LocationAuthorityAgent::la_issue_proof(const LocationProofRequest& lpreq, GeoPoint observed,
                                                                Timestamp now) {
  const ApprovalMessage& approval = lpreq.approval;
  if (auto s = check_approval(*keys_, approval); !s) return s.failure();
  if (approval.la != self_.id) return fail(Reason::NotDesignatedLA, approval.la.value);
  if (auto it = received_.find(approval.block_id); it != received_.end() && !(it->second == approval))
    return fail(Reason::InvalidApproval, "differs from the copy sent by the supervisor");
  if (served_.count(approval.block_id)) return fail(Reason::ApprovalReplayed, approval.block_id.hex());
  if (now - lpreq.t_request - config_.localization_latency_ms > config_.response_delay_bound_ms)
    return fail(Reason::ResponseDelayExceeded, std::to_string(now - lpreq.t_request) + " ms");
  if (!LocalizationCheck{approval.preq.loc, observed, config_.localization_range_m}.passes())
    return fail(Reason::LocalizationFailed, "prover not at claimed location");

  served_.emplace(approval.block_id, ProtocolStep::ProofIssued);
  return build_assertion_request(self_, lpreq, now);
}

Result<AssertedLocationProof> LocationAuthorityAgent::la_forward_alp(const AssertedLocationProof& alp,
                                                                     Timestamp) const {
  const ApprovalMessage& approval = alp.areq.lp.lpreq.approval;
  if (alp.ar.sig.signer != approval.witness || !keys_->verify(alp.ar.sig, signed_payload(alp.ar)))
    return fail(Reason::WrongWitnessSignature, alp.ar.sig.signer.value);
  if (alp.ar.astat.t_astat - alp.areq.lp.lpreq.t_request > config_.temporal_range_ms)
    return fail(Reason::TemporalRangeViolation, "assertion time outside the request window");
  return alp;
}

Result<AckAlpFinal> LocationAuthorityAgent::la_finalize(const AckAlp& ack_alp, Timestamp) {
  const auto& prover = ack_alp.ack.alp.areq.lp.lpreq.approval.preq.prover;
  if (ack_alp.sig.signer != prover || !keys_->verify(ack_alp.sig, signed_payload(ack_alp)))
    return fail(Reason::InvalidSignature, "prover acknowledgement");
  served_.insert_or_assign(ack_alp.ack.block_id, ProtocolStep::Finalized);
  return build_final(self_, ack_alp);
}

ProtocolStep LocationAuthorityAgent::step(const Digest& block_id) const {
  auto it = served_.find(block_id);
  return it == served_.end() ? ProtocolStep::Idle : it->second;
}

void WitnessAgent::receive_approval(const ApprovalMessage& approval) {
  received_.insert_or_assign(approval.block_id, approval);
}

Result<AssertedLocationProof> WitnessAgent::witness_assert(const AssertionRequest& areq, GeoPoint observed,
                                                           Timestamp now) {
  const LocationProof& lp = areq.lp;
  const ApprovalMessage& approval = lp.lpreq.approval;
  if (approval.witness != self_.id) return fail(Reason::NotDesignatedWitness, approval.witness.value);
  if (!keys_->verify_as(areq.sig, signed_payload(areq), EntityRole::LocationAuthority) || areq.sig.signer != lp.la)
    return fail(Reason::InvalidAReq, "location authority signature");
  auto it = received_.find(approval.block_id);
  if (it == received_.end()) return fail(Reason::InvalidAReq, "unknown decision block");
  if (!(it->second == approval)) return fail(Reason::InvalidAReq, "approval differs from supervisor copy");
  if (lp.la != approval.la) return fail(Reason::InvalidAReq, "issued by a different location authority");
  if (now - lp.lpreq.t_request - 2 * config_.localization_latency_ms > 2 * config_.response_delay_bound_ms)
    return fail(Reason::ResponseDelayExceeded, std::to_string(now - lp.lpreq.t_request) + " ms");
  if (!LocalizationCheck{approval.preq.loc, observed, config_.localization_range_m}.passes())
    return fail(Reason::LocalizationFailed, "prover not at claimed location");

  AssertedLocationProof alp = build_alp(self_, areq, self_.id, now, now);
  produced_.insert(digest_of(alp));
  return alp;
}

VerificationResponse WitnessAgent::witness_answer(const VerificationRequest& vreq, Timestamp now) const {
  Digest h = digest_of(vreq.alp);
  return build_verification(self_, produced(h) ? Verdict::Yes : Verdict::No, h, now);
}

}  // namespace lpchain
