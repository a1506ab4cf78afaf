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

#include "lpchain/ledger.hpp"

#include <cstdlib>
#include <fstream>

#include "lpchain/consensus.hpp"

namespace lpchain {

namespace {

constexpr std::size_t kTrailer = 4 + 32;

Bytes provenance_body(const AckAlpFinal& r) { return encode(r); }

}  // namespace

std::optional<ChainLink> split_entry(ByteView entry) {
  if (entry.size() < kTrailer) return std::nullopt;
  std::size_t body_len = entry.size() - kTrailer;
  ByteView len = entry.subspan(body_len, 4);
  if (len[0] != 0 || len[1] != 0 || len[2] != 0 || len[3] != 32) return std::nullopt;
  return ChainLink{entry.first(body_len), Digest::from_bytes(entry.subspan(body_len + 4))};
}

Bytes join_entry(ByteView body, const Digest& d) {
  Bytes out(body.begin(), body.end());
  out.insert(out.end(), {0, 0, 0, 32});
  out.insert(out.end(), d.bytes.begin(), d.bytes.end());
  return out;
}

std::optional<std::size_t> audit_chain(std::span<const Bytes> entries) {
  ByteView prev_body;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto link = split_entry(entries[i]);
    if (!link || chain_link(prev_body, link->body) != link->digest) return i;
    prev_body = link->body;
  }
  return std::nullopt;
}

Status DecisionChain::append_decision(const DecisionBlock& block) {
  if (index_.count(block.id)) return fail(Reason::DuplicateBlock, block.id.hex());
  if (compute_block_id(head(), block) != block.id) return fail(Reason::BrokenChain, block.id.hex());
  index_.emplace(block.id, blocks_.size());
  blocks_.push_back(block);
  return ok_status();
}

const DecisionBlock* DecisionChain::find(const Digest& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &blocks_[it->second];
}

std::vector<Bytes> DecisionChain::entries() const {
  std::vector<Bytes> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(encode(b));
  return out;
}

Result<DecisionChain> DecisionChain::from_entries(std::span<const Bytes> entries) {
  if (auto broken = audit_chain(entries))
    return fail(Reason::BrokenChain, "entry " + std::to_string(*broken));
  DecisionChain chain;
  for (const auto& e : entries) {
    DecisionBlock b;
    try {
      b = decode<DecisionBlock>(e);
    } catch (const DecodeError& err) {
      return fail(Reason::ParseError, err.what());
    }
    if (auto s = chain.append_decision(b); !s) return s.failure();
  }
  return chain;
}

Status check_signatures(const AssertedLocationProof& alp, const KeyDirectory& keys) {
  const auto& areq = alp.areq;
  const auto& approval = areq.lp.lpreq.approval;
  const auto& preq = approval.preq;
  if (!keys.verify_as(preq.sig, signed_payload(preq), EntityRole::Mobile) || preq.sig.signer != preq.prover)
    return fail(Reason::InvalidNestedSignature, "proof request");
  if (!keys.verify_as(approval.sig, signed_payload(approval), EntityRole::Supervisor))
    return fail(Reason::InvalidNestedSignature, "approval");
  if (!keys.verify_as(areq.sig, signed_payload(areq), EntityRole::LocationAuthority))
    return fail(Reason::InvalidNestedSignature, "assertion request");
  if (!keys.verify_as(alp.ar.sig, signed_payload(alp.ar), EntityRole::Mobile))
    return fail(Reason::InvalidNestedSignature, "assertion response");
  if (alp.ar.astat.h_areq != digest_of(areq)) return fail(Reason::NestingMismatch, "h_areq");
  return ok_status();
}

Status check_participants(const AssertedLocationProof& alp, const DecisionBlock& block) {
  const auto& lp = alp.areq.lp;
  const auto& approval = lp.lpreq.approval;
  const auto& astat = alp.ar.astat;
  auto mismatch = [](const char* what) { return fail(Reason::ParticipantMismatch, what); };

  if (approval.block_id != block.id || astat.block_id != block.id) return mismatch("block id");
  if (block.acks.empty() || !(approval.preq == block.acks.front().req.preq)) return mismatch("request");
  if (approval.sig.signer != block.rrsn) return mismatch("approval signer");
  if (approval.witness != block.witness || astat.witness != block.witness) return mismatch("witness");
  if (alp.ar.sig.signer != block.witness) return mismatch("witness signer");
  if (approval.la != block.la || astat.la != block.la || lp.la != block.la) return mismatch("location authority");
  if (alp.areq.sig.signer != block.la) return mismatch("location authority signer");
  if (astat.prover != approval.preq.prover) return mismatch("prover");
  return ok_status();
}

Status check_timestamps(const AssertedLocationProof& alp, const DecisionBlock& block, Timestamp t_ack,
                        const LedgerConfig& config) {
  const auto& lp = alp.areq.lp;
  Timestamp t_p = lp.lpreq.approval.preq.t;
  Timestamp t_request = lp.lpreq.t_request;
  Timestamp t_astat = alp.ar.astat.t_astat;

  if (t_astat - t_request > config.temporal_range_ms)
    return fail(Reason::TemporalRangeViolation,
                "assertion " + std::to_string(t_astat - t_request) + " ms after request");
  if (!(t_p <= t_request && t_request <= lp.t_ls && lp.t_ls <= t_astat && t_astat <= alp.t_alp &&
        alp.t_alp <= t_ack))
    return fail(Reason::TimestampInconsistent);
  if (std::llabs(alp.t_alp - block.t) > config.decision_skew_ms)
    return fail(Reason::DecisionSkewExceeded, std::to_string(alp.t_alp - block.t) + " ms");
  // A request cannot predate the block that approved it by more than the skew.
  if (block.t - t_p > config.decision_skew_ms)
    return fail(Reason::DecisionSkewExceeded, "request " + std::to_string(block.t - t_p) + " ms before block");
  return ok_status();
}

Status ProvenanceChain::append_proof(const AckAlpFinal& proof, const DecisionChain& decisions,
                                     const KeyDirectory& keys, const LedgerConfig& config, Timestamp now) {
  const AckAlp& signed_ack = proof.ack_alp;
  const Acknowledgement& ack = signed_ack.ack;
  const AssertedLocationProof& alp = ack.alp;
  const EntityId& prover = alp.areq.lp.lpreq.approval.preq.prover;

  const DecisionBlock* block = decisions.find(ack.block_id);
  if (block == nullptr) return fail(Reason::MissingDecisionBlock, ack.block_id.hex());
  if (auto s = check_participants(alp, *block); !s) return s;
  if (ack.vr.sig.signer != block->witness) return fail(Reason::ParticipantMismatch, "verification signer");
  if (signed_ack.sig.signer != prover) return fail(Reason::ParticipantMismatch, "acknowledgement signer");
  if (proof.sig.signer != block->la) return fail(Reason::ParticipantMismatch, "final signer");

  if (auto s = check_signatures(alp, keys); !s) return s;
  if (!keys.verify_as(ack.vr.sig, signed_payload(ack.vr), EntityRole::Mobile))
    return fail(Reason::InvalidNestedSignature, "verification response");
  if (!keys.verify_as(signed_ack.sig, signed_payload(signed_ack), EntityRole::Mobile))
    return fail(Reason::InvalidNestedSignature, "prover acknowledgement");
  if (!keys.verify_as(proof.sig, signed_payload(proof), EntityRole::LocationAuthority))
    return fail(Reason::InvalidNestedSignature, "final acknowledgement");

  Digest alp_digest = digest_of(alp);
  if (ack.vr.v.r != Verdict::Yes || ack.vr.v.h_alp != alp_digest) return fail(Reason::WitnessVerdictMismatch);

  if (auto s = check_timestamps(alp, *block, ack.t_ack, config); !s) return s;
  if (ack.t_ack > now) return fail(Reason::ChronologyViolation, "acknowledged after commit time");

  if (by_alp_.count(alp_digest)) return fail(Reason::DuplicateProof);
  if (used_blocks_.count(block->id)) return fail(Reason::ApprovalReused, block->id.hex());
  if (auto it = by_prover_.find(prover); it != by_prover_.end() && !it->second.empty()) {
    const Entry& latest = entries_[it->second.back()];
    if (alp.t_alp < latest.record.ack_alp.ack.alp.t_alp) return fail(Reason::ChronologyViolation);
  }

  Bytes prev = entries_.empty() ? Bytes{} : provenance_body(entries_.back().record);
  push(proof, chain_link(prev, provenance_body(proof)));
  return ok_status();
}

void ProvenanceChain::push(AckAlpFinal record, const Digest& link) {
  const auto& alp = record.ack_alp.ack.alp;
  std::size_t pos = entries_.size();
  Digest alp_digest = digest_of(alp);
  by_alp_.emplace(alp_digest, pos);
  used_blocks_.emplace(record.ack_alp.ack.block_id, pos);
  by_prover_[alp.areq.lp.lpreq.approval.preq.prover].push_back(pos);
  entries_.push_back(Entry{std::move(record), link, alp_digest});
}

const ProvenanceChain::Entry* ProvenanceChain::find_by_alp(const Digest& alp_digest) const {
  auto it = by_alp_.find(alp_digest);
  return it == by_alp_.end() ? nullptr : &entries_[it->second];
}

std::vector<const ProvenanceChain::Entry*> ProvenanceChain::for_prover(const EntityId& prover) const {
  std::vector<const Entry*> out;
  if (auto it = by_prover_.find(prover); it != by_prover_.end())
    for (auto i : it->second) out.push_back(&entries_[i]);
  return out;
}

std::vector<Bytes> ProvenanceChain::entries() const {
  std::vector<Bytes> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(join_entry(provenance_body(e.record), e.digest));
  return out;
}

Result<ProvenanceChain> ProvenanceChain::from_entries(std::span<const Bytes> entries) {
  if (auto broken = audit_chain(entries))
    return fail(Reason::BrokenChain, "entry " + std::to_string(*broken));
  ProvenanceChain chain;
  for (const auto& e : entries) {
    auto link = split_entry(e);
    try {
      chain.push(decode<AckAlpFinal>(link->body), link->digest);
    } catch (const DecodeError& err) {
      return fail(Reason::ParseError, err.what());
    }
  }
  return chain;
}

Status verify_third_party(const AssertedLocationProof& alp, const DecisionChain& decisions,
                          const ProvenanceChain& provenance, const KeyDirectory& keys,
                          const BlockAcceptance& acceptance, const LedgerConfig& config) {
  if (auto s = check_signatures(alp, keys); !s) return s;
  const Digest& block_id = alp.ar.astat.block_id;
  const DecisionBlock* block = decisions.find(block_id);
  if (block == nullptr) return fail(Reason::MissingDecisionBlock, block_id.hex());
  if (!acceptance.majority(block_id)) return fail(Reason::BlockNotMajorityAccepted, block_id.hex());
  if (auto s = check_participants(alp, *block); !s) return s;
  const auto* entry = provenance.find_by_alp(digest_of(alp));
  if (entry == nullptr) return fail(Reason::NotOnChain);
  return check_timestamps(alp, *block, entry->record.ack_alp.ack.t_ack, config);
}

std::string_view to_string(ChainKind k) { return k == ChainKind::Decision ? "decision" : "provenance"; }

ChainWriter::ChainWriter(const std::filesystem::path& path, ChainKind kind) : path_(path) {
  std::ofstream out(path_, std::ios::trunc);
  if (!out) throw Error(Reason::IoError, "cannot open " + path_.string());
  out << to_string(kind) << ' ' << kHashAlgorithm << '\n';
}

void ChainWriter::append(ByteView entry) {
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error(Reason::IoError, "cannot append to " + path_.string());
  out << to_hex(entry) << '\n';
}

void write_chain_file(const std::filesystem::path& path, ChainKind kind, std::span<const Bytes> entries) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(Reason::IoError, "cannot open " + path.string());
  out << to_string(kind) << ' ' << kHashAlgorithm << '\n';
  for (const auto& e : entries) out << to_hex(e) << '\n';
  if (!out) throw Error(Reason::IoError, "write failed: " + path.string());
}

ChainFile read_chain_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Reason::IoError, "cannot open " + path.string());
  std::string kind, hash;
  in >> kind >> hash;
  ChainFile file;
  if (kind == "decision")
    file.kind = ChainKind::Decision;
  else if (kind == "provenance")
    file.kind = ChainKind::Provenance;
  else
    throw Error(Reason::ParseError, "unknown chain type '" + kind + "'");
  if (hash != kHashAlgorithm) throw Error(Reason::ParseError, "unsupported hash '" + hash + "'");
  std::string line;
  while (in >> line) file.entries.push_back(from_hex(line));
  return file;
}

}  // namespace lpchain
