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

#include "lpchain/result.hpp"

namespace lpchain {

std::string_view to_string(Reason r) {
  switch (r) {
    case Reason::InvalidSignature: return "InvalidSignature";
    case Reason::UnknownProver: return "UnknownProver";
    case Reason::UnknownEntity: return "UnknownEntity";
    case Reason::DuplicateEntity: return "DuplicateEntity";
    case Reason::UnsupportedKeyLevel: return "UnsupportedKeyLevel";
    case Reason::StaleRequest: return "StaleRequest";
    case Reason::NoEligibleWitness: return "NoEligibleWitness";
    case Reason::NoEligibleLA: return "NoEligibleLA";
    case Reason::DuplicateAck: return "DuplicateAck";
    case Reason::MismatchedRequest: return "MismatchedRequest";
    case Reason::AlreadyFinalized: return "AlreadyFinalized";
    case Reason::ConsensusTimeout: return "ConsensusTimeout";
    case Reason::InvalidBlockSignature: return "InvalidBlockSignature";
    case Reason::InvalidAckSignature: return "InvalidAckSignature";
    case Reason::InsufficientQuorum: return "InsufficientQuorum";
    case Reason::AckChoiceMismatch: return "AckChoiceMismatch";
    case Reason::ContributedAckAltered: return "ContributedAckAltered";
    case Reason::UnknownRequest: return "UnknownRequest";
    case Reason::BrokenChain: return "BrokenChain";
    case Reason::DuplicateBlock: return "DuplicateBlock";
    case Reason::MissingDecisionBlock: return "MissingDecisionBlock";
    case Reason::ParticipantMismatch: return "ParticipantMismatch";
    case Reason::InvalidNestedSignature: return "InvalidNestedSignature";
    case Reason::NestingMismatch: return "NestingMismatch";
    case Reason::WitnessVerdictMismatch: return "WitnessVerdictMismatch";
    case Reason::TimestampInconsistent: return "TimestampInconsistent";
    case Reason::TemporalRangeViolation: return "TemporalRangeViolation";
    case Reason::DecisionSkewExceeded: return "DecisionSkewExceeded";
    case Reason::ChronologyViolation: return "ChronologyViolation";
    case Reason::ApprovalReused: return "ApprovalReused";
    case Reason::DuplicateProof: return "DuplicateProof";
    case Reason::BlockNotMajorityAccepted: return "BlockNotMajorityAccepted";
    case Reason::NotOnChain: return "NotOnChain";
    case Reason::MalformedProof: return "MalformedProof";
    case Reason::ApprovalNotForMe: return "ApprovalNotForMe";
    case Reason::NotDesignatedLA: return "NotDesignatedLA";
    case Reason::NotDesignatedWitness: return "NotDesignatedWitness";
    case Reason::InvalidApproval: return "InvalidApproval";
    case Reason::ApprovalReplayed: return "ApprovalReplayed";
    case Reason::LocalizationFailed: return "LocalizationFailed";
    case Reason::ResponseDelayExceeded: return "ResponseDelayExceeded";
    case Reason::InvalidAReq: return "InvalidAReq";
    case Reason::WrongWitnessSignature: return "WrongWitnessSignature";
    case Reason::WitnessSaidNo: return "WitnessSaidNo";
    case Reason::StepTimeout: return "StepTimeout";
    case Reason::InvalidConfig: return "InvalidConfig";
    case Reason::InconsistentBehavior: return "InconsistentBehavior";
    case Reason::ForkDetected: return "ForkDetected";
    case Reason::NonTermination: return "NonTermination";
    case Reason::IoError: return "IoError";
    case Reason::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace lpchain
