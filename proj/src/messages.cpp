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

#include "lpchain/messages.hpp"

namespace lpchain {

namespace {

void put(Writer& w, const EntityId& id) { w.put_string(id.value); }
void put(Writer& w, Timestamp t) { w.put_i64(t.millis); }
void put(Writer& w, const Digest& d) { w.put_bytes(d.view()); }
void put(Writer& w, Verdict v) { w.put_i64(static_cast<std::int64_t>(v)); }

void put(Writer& w, const GeoPoint& p) {
  w.nested([&](Writer& in) {
    in.put_f64(p.x);
    in.put_f64(p.y);
  });
}

void put(Writer& w, const Signature& s) {
  w.nested([&](Writer& in) {
    in.put_bytes(s.bytes);
    in.put_string(s.signer.value);
  });
}

template <class T>
auto put(Writer& w, const T& m) -> decltype(encode_to(w, m)) {
  w.nested([&](Writer& in) { encode_to(in, m); });
}

void get(Reader& r, EntityId& id) { id.value = r.get_string(); }
void get(Reader& r, Timestamp& t) { t.millis = r.get_i64(); }
void get(Reader& r, Digest& d) {
  Bytes b = r.get_bytes();
  if (b.size() != 32) throw DecodeError("digest field must be 32 bytes");
  std::copy(b.begin(), b.end(), d.bytes.begin());
}
void get(Reader& r, Verdict& v) {
  auto raw = r.get_i64();
  if (raw != 0 && raw != 1) throw DecodeError("verdict out of range");
  v = static_cast<Verdict>(raw);
}

void get(Reader& r, GeoPoint& p) {
  Reader in = r.get_nested();
  p.x = in.get_f64();
  p.y = in.get_f64();
  in.expect_end();
}

void get(Reader& r, Signature& s) {
  Reader in = r.get_nested();
  s.bytes = in.get_bytes();
  s.signer.value = in.get_string();
  in.expect_end();
}

template <class T>
auto get(Reader& r, T& m) -> decltype(decode_from(r, m)) {
  Reader in = r.get_nested();
  decode_from(in, m);
  in.expect_end();
}

template <class... Fields>
void put_all(Writer& w, const Fields&... f) {
  (put(w, f), ...);
}

template <class... Fields>
void get_all(Reader& r, Fields&... f) {
  (get(r, f), ...);
}

template <class... Fields>
Bytes fields(const Fields&... f) {
  Writer w;
  put_all(w, f...);
  return std::move(w).take();
}

void put_acks(Writer& w, const std::vector<DecisionAck>& acks) {
  w.put_i64(static_cast<std::int64_t>(acks.size()));
  for (const auto& a : acks) put(w, a);
}

void get_acks(Reader& r, std::vector<DecisionAck>& acks) {
  auto n = r.get_i64();
  if (n < 0) throw DecodeError("negative collection size");
  acks.clear();
  for (std::int64_t i = 0; i < n; ++i) {
    DecisionAck a;
    get(r, a);
    acks.push_back(std::move(a));
  }
}

void put_block_unsigned(Writer& w, const DecisionBlock& m) {
  put_acks(w, m.acks);
  put_all(w, m.witness, m.la, m.rrsn, m.t);
}

}  // namespace

void encode_to(Writer& w, const ProofRequest& m) { put_all(w, m.prover, m.t, m.loc, m.sig); }
void decode_from(Reader& r, ProofRequest& m) { get_all(r, m.prover, m.t, m.loc, m.sig); }

void encode_to(Writer& w, const BroadcastRequest& m) { put_all(w, m.preq, m.t_rrsn, m.sig_t, m.rrsn); }
void decode_from(Reader& r, BroadcastRequest& m) { get_all(r, m.preq, m.t_rrsn, m.sig_t, m.rrsn); }

void encode_to(Writer& w, const DecisionAck& m) {
  put_all(w, m.sn, m.t, m.witness_choice, m.la_choice, m.req, m.sig);
}
void decode_from(Reader& r, DecisionAck& m) {
  get_all(r, m.sn, m.t, m.witness_choice, m.la_choice, m.req, m.sig);
}

void encode_to(Writer& w, const DecisionBlock& m) {
  put_block_unsigned(w, m);
  put_all(w, m.sig, m.id);
}
void decode_from(Reader& r, DecisionBlock& m) {
  get_acks(r, m.acks);
  get_all(r, m.witness, m.la, m.rrsn, m.t, m.sig, m.id);
}

void encode_to(Writer& w, const ApprovalMessage& m) {
  put_all(w, m.preq, m.block_id, m.witness, m.la, m.t, m.sig);
}
void decode_from(Reader& r, ApprovalMessage& m) {
  get_all(r, m.preq, m.block_id, m.witness, m.la, m.t, m.sig);
}

void encode_to(Writer& w, const LocationProofRequest& m) { put_all(w, m.approval, m.t_request); }
void decode_from(Reader& r, LocationProofRequest& m) { get_all(r, m.approval, m.t_request); }

void encode_to(Writer& w, const LocationProof& m) { put_all(w, m.la, m.lpreq, m.t_ls); }
void decode_from(Reader& r, LocationProof& m) { get_all(r, m.la, m.lpreq, m.t_ls); }

void encode_to(Writer& w, const AssertionRequest& m) { put_all(w, m.lp, m.sig); }
void decode_from(Reader& r, AssertionRequest& m) { get_all(r, m.lp, m.sig); }

void encode_to(Writer& w, const AssertionStatement& m) {
  put_all(w, m.block_id, m.prover, m.la, m.witness, m.h_areq, m.t_astat);
}
void decode_from(Reader& r, AssertionStatement& m) {
  get_all(r, m.block_id, m.prover, m.la, m.witness, m.h_areq, m.t_astat);
}

void encode_to(Writer& w, const AssertionResponse& m) { put_all(w, m.astat, m.sig); }
void decode_from(Reader& r, AssertionResponse& m) { get_all(r, m.astat, m.sig); }

void encode_to(Writer& w, const AssertedLocationProof& m) { put_all(w, m.areq, m.ar, m.t_alp); }
void decode_from(Reader& r, AssertedLocationProof& m) { get_all(r, m.areq, m.ar, m.t_alp); }

void encode_to(Writer& w, const VerificationRequest& m) { put_all(w, m.alp, m.t_vpreq); }
void decode_from(Reader& r, VerificationRequest& m) { get_all(r, m.alp, m.t_vpreq); }

void encode_to(Writer& w, const Verification& m) { put_all(w, m.r, m.h_alp, m.t_v); }
void decode_from(Reader& r, Verification& m) { get_all(r, m.r, m.h_alp, m.t_v); }

void encode_to(Writer& w, const VerificationResponse& m) { put_all(w, m.v, m.sig); }
void decode_from(Reader& r, VerificationResponse& m) { get_all(r, m.v, m.sig); }

void encode_to(Writer& w, const Acknowledgement& m) { put_all(w, m.alp, m.vr, m.block_id, m.t_ack); }
void decode_from(Reader& r, Acknowledgement& m) { get_all(r, m.alp, m.vr, m.block_id, m.t_ack); }

void encode_to(Writer& w, const AckAlp& m) { put_all(w, m.ack, m.sig); }
void decode_from(Reader& r, AckAlp& m) { get_all(r, m.ack, m.sig); }

void encode_to(Writer& w, const AckAlpFinal& m) { put_all(w, m.ack_alp, m.sig); }
void decode_from(Reader& r, AckAlpFinal& m) { get_all(r, m.ack_alp, m.sig); }

Bytes signed_payload(const ProofRequest& m) { return fields(m.prover, m.t, m.loc); }
Bytes signed_payload(const BroadcastRequest& m) { return fields(m.t_rrsn); }
Bytes signed_payload(const DecisionAck& m) { return fields(m.sn, m.t, m.witness_choice, m.la_choice, m.req); }
Bytes signed_payload(const DecisionBlock& m) {
  Writer w;
  put_block_unsigned(w, m);
  return std::move(w).take();
}
Bytes signed_payload(const ApprovalMessage& m) { return fields(m.preq, m.block_id, m.witness, m.la, m.t); }
Bytes signed_payload(const AssertionRequest& m) { return encode(m.lp); }
Bytes signed_payload(const AssertionResponse& m) { return encode(m.astat); }
Bytes signed_payload(const VerificationResponse& m) { return encode(m.v); }
Bytes signed_payload(const AckAlp& m) { return encode(m.ack); }
Bytes signed_payload(const AckAlpFinal& m) { return encode(m.ack_alp); }

Bytes block_body(const DecisionBlock& b) {
  Writer w;
  put_block_unsigned(w, b);
  put(w, b.sig);
  return std::move(w).take();
}

}  // namespace lpchain
