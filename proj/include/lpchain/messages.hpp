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

// Protocol records and their canonical byte encoding.
//
// Encoding rules: fields in declared order; integers as 8-byte big-endian;
// coordinates as big-endian IEEE-754 binary64; strings and byte fields with a
// 4-byte big-endian length prefix; nested records encoded recursively and
// length-prefixed; collections as an 8-byte count followed by the elements.
// A signature covers the encoding of the fields that precede it; when that
// is a single record, the record's own encoding without a length prefix.

#include <vector>

#include "lpchain/canonical.hpp"
#include "lpchain/crypto.hpp"
#include "lpchain/types.hpp"

namespace lpchain {

struct ProofRequest {
  EntityId prover;
  Timestamp t;
  GeoPoint loc;
  Signature sig;

  bool operator==(const ProofRequest&) const = default;
};

// The supervisor that received the request re-broadcasts it with its own
// timestamp. Only the timestamp is signed.
struct BroadcastRequest {
  ProofRequest preq;
  Timestamp t_rrsn;
  Signature sig_t;
  EntityId rrsn;

  bool operator==(const BroadcastRequest&) const = default;
};

struct DecisionAck {
  EntityId sn;
  Timestamp t;
  EntityId witness_choice;
  EntityId la_choice;
  BroadcastRequest req;
  Signature sig;

  bool operator==(const DecisionAck&) const = default;
};

// The chained body is everything up to and including sig. id is derived from
// the body and its predecessor and is carried alongside it.
struct DecisionBlock {
  std::vector<DecisionAck> acks;
  EntityId witness;
  EntityId la;
  EntityId rrsn;
  Timestamp t;
  Signature sig;
  Digest id;

  bool operator==(const DecisionBlock&) const = default;
};

struct ApprovalMessage {
  ProofRequest preq;
  Digest block_id;
  EntityId witness;
  EntityId la;
  Timestamp t;
  Signature sig;

  bool operator==(const ApprovalMessage&) const = default;
};

struct LocationProofRequest {
  ApprovalMessage approval;
  Timestamp t_request;

  bool operator==(const LocationProofRequest&) const = default;
};

struct LocationProof {
  EntityId la;
  LocationProofRequest lpreq;
  Timestamp t_ls;

  bool operator==(const LocationProof&) const = default;
};

struct AssertionRequest {
  LocationProof lp;
  Signature sig;

  bool operator==(const AssertionRequest&) const = default;
};

struct AssertionStatement {
  Digest block_id;
  EntityId prover;
  EntityId la;
  EntityId witness;
  Digest h_areq;
  Timestamp t_astat;

  bool operator==(const AssertionStatement&) const = default;
};

struct AssertionResponse {
  AssertionStatement astat;
  Signature sig;

  bool operator==(const AssertionResponse&) const = default;
};

struct AssertedLocationProof {
  AssertionRequest areq;
  AssertionResponse ar;
  Timestamp t_alp;

  bool operator==(const AssertedLocationProof&) const = default;
};

struct VerificationRequest {
  AssertedLocationProof alp;
  Timestamp t_vpreq;

  bool operator==(const VerificationRequest&) const = default;
};

struct Verification {
  Verdict r = Verdict::No;
  Digest h_alp;
  Timestamp t_v;

  bool operator==(const Verification&) const = default;
};

struct VerificationResponse {
  Verification v;
  Signature sig;

  bool operator==(const VerificationResponse&) const = default;
};

struct Acknowledgement {
  AssertedLocationProof alp;
  VerificationResponse vr;
  Digest block_id;
  Timestamp t_ack;

  bool operator==(const Acknowledgement&) const = default;
};

// Prover-signed acknowledgement.
struct AckAlp {
  Acknowledgement ack;
  Signature sig;

  bool operator==(const AckAlp&) const = default;
};

// LA countersignature over AckAlp; the record stored on the provenance chain.
struct AckAlpFinal {
  AckAlp ack_alp;
  Signature sig;

  bool operator==(const AckAlpFinal&) const = default;
};

// Full canonical encoding.
#define LPCHAIN_MESSAGE(T)          \
  void encode_to(Writer& w, const T& m); \
  void decode_from(Reader& r, T& m);
LPCHAIN_MESSAGE(ProofRequest)
LPCHAIN_MESSAGE(BroadcastRequest)
LPCHAIN_MESSAGE(DecisionAck)
LPCHAIN_MESSAGE(DecisionBlock)
LPCHAIN_MESSAGE(ApprovalMessage)
LPCHAIN_MESSAGE(LocationProofRequest)
LPCHAIN_MESSAGE(LocationProof)
LPCHAIN_MESSAGE(AssertionRequest)
LPCHAIN_MESSAGE(AssertionStatement)
LPCHAIN_MESSAGE(AssertionResponse)
LPCHAIN_MESSAGE(AssertedLocationProof)
LPCHAIN_MESSAGE(VerificationRequest)
LPCHAIN_MESSAGE(Verification)
LPCHAIN_MESSAGE(VerificationResponse)
LPCHAIN_MESSAGE(Acknowledgement)
LPCHAIN_MESSAGE(AckAlp)
LPCHAIN_MESSAGE(AckAlpFinal)
#undef LPCHAIN_MESSAGE

template <class T>
Bytes encode(const T& m) {
  Writer w;
  encode_to(w, m);
  return std::move(w).take();
}

// Throws DecodeError on malformed input or trailing bytes.
template <class T>
T decode(ByteView data) {
  Reader r(data);
  T m;
  decode_from(r, m);
  r.expect_end();
  return m;
}

template <class T>
Digest digest_of(const T& m) {
  return digest(encode(m));
}

// Exactly the bytes each signature covers.
Bytes signed_payload(const ProofRequest& m);
Bytes signed_payload(const BroadcastRequest& m);
Bytes signed_payload(const DecisionAck& m);
Bytes signed_payload(const DecisionBlock& m);
Bytes signed_payload(const ApprovalMessage& m);
Bytes signed_payload(const AssertionRequest& m);
Bytes signed_payload(const AssertionResponse& m);
Bytes signed_payload(const VerificationResponse& m);
Bytes signed_payload(const AckAlp& m);
Bytes signed_payload(const AckAlpFinal& m);

// Encoding of a decision block without its id; the unit that is chained.
Bytes block_body(const DecisionBlock& b);

}  // namespace lpchain
