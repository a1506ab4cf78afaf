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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace lpchain {

// Every rejection the system can produce. One flat enum so that outcomes
// from different layers (consensus, service protocol, ledger) can be
// compared against expected reason classes.
enum class Reason : std::uint16_t {
  // signatures / identities
  InvalidSignature,
  UnknownProver,
  UnknownEntity,
  DuplicateEntity,
  UnsupportedKeyLevel,
  // admin layer
  StaleRequest,
  NoEligibleWitness,
  NoEligibleLA,
  DuplicateAck,
  MismatchedRequest,
  AlreadyFinalized,
  ConsensusTimeout,
  InvalidBlockSignature,
  InvalidAckSignature,
  InsufficientQuorum,
  AckChoiceMismatch,
  ContributedAckAltered,
  UnknownRequest,
  // ledger
  BrokenChain,
  DuplicateBlock,
  MissingDecisionBlock,
  ParticipantMismatch,
  InvalidNestedSignature,
  NestingMismatch,
  WitnessVerdictMismatch,
  TimestampInconsistent,
  TemporalRangeViolation,
  DecisionSkewExceeded,
  ChronologyViolation,
  ApprovalReused,
  DuplicateProof,
  BlockNotMajorityAccepted,
  NotOnChain,
  MalformedProof,
  // service layer
  ApprovalNotForMe,
  NotDesignatedLA,
  NotDesignatedWitness,
  InvalidApproval,
  ApprovalReplayed,
  LocalizationFailed,
  ResponseDelayExceeded,
  InvalidAReq,
  WrongWitnessSignature,
  WitnessSaidNo,
  StepTimeout,
  // harness
  InvalidConfig,
  InconsistentBehavior,
  ForkDetected,
  NonTermination,
  IoError,
  ParseError,
};

std::string_view to_string(Reason r);

struct Failure {
  Reason reason;
  std::string detail;
};

inline Failure fail(Reason r, std::string detail = {}) { return Failure{r, std::move(detail)}; }

// Value-or-failure return for operations whose negative outcomes are part of
// normal protocol flow.
template <class T>
class [[nodiscard]] Result {
 public:
  Result(T value) : v_(std::move(value)) {}
  Result(Failure f) : v_(std::move(f)) {}

  bool ok() const { return v_.index() == 0; }
  explicit operator bool() const { return ok(); }

  T& value() & { return std::get<0>(v_); }
  const T& value() const& { return std::get<0>(v_); }
  T&& value() && { return std::get<0>(std::move(v_)); }
  T& operator*() & { return value(); }
  const T& operator*() const& { return value(); }
  T* operator->() { return &value(); }
  const T* operator->() const { return &value(); }

  const Failure& failure() const { return std::get<1>(v_); }
  Reason reason() const { return failure().reason; }

 private:
  std::variant<T, Failure> v_;
};

using Status = Result<std::monostate>;
inline Status ok_status() { return Status(std::monostate{}); }

// Thrown for configuration, I/O and decoding problems that are not part of
// protocol flow.
class Error : public std::runtime_error {
 public:
  Error(Reason r, const std::string& what) : std::runtime_error(what), reason_(r) {}
  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

}  // namespace lpchain
