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

#include "lpchain/sim/artifacts.hpp"

#include <fstream>
#include <sstream>

#include "lpchain/sim/scenario_io.hpp"

namespace lpchain::sim {

namespace fs = std::filesystem;

namespace {

Status write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return fail(Reason::IoError, "cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) return fail(Reason::IoError, "write failed for " + path.string());
  return ok_status();
}

Result<std::string> read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return fail(Reason::IoError, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view extension(bench::Format f) { return f == bench::Format::Csv ? "csv" : "jsonl"; }

Result<EntityRole> role_from(std::string_view s) {
  for (auto r : {EntityRole::Supervisor, EntityRole::Mobile, EntityRole::LocationAuthority})
    if (to_string(r) == s) return r;
  return fail(Reason::ParseError, "unknown role '" + std::string(s) + "'");
}

}  // namespace

BlockAcceptance ChainDir::acceptance() const {
  return BlockAcceptance{n_nodes, [this](const Digest& id) {
                           auto it = accepted.find(id);
                           return it == accepted.end() ? 0 : it->second;
                         }};
}

Status write_proof_file(const fs::path& path, const AssertedLocationProof& alp) {
  return write_text(path, to_hex(encode(alp)) + "\n");
}

Result<AssertedLocationProof> read_proof_file(const fs::path& path) {
  auto text = read_text(path);
  if (!text) return text.failure();
  std::string hex;
  for (char c : *text)
    if (!std::isspace(static_cast<unsigned char>(c))) hex += c;
  try {
    return decode<AssertedLocationProof>(from_hex(hex));
  } catch (const Error& e) {
    return fail(e.reason(), e.what());
  } catch (const DecodeError& e) {
    return fail(Reason::MalformedProof, e.what());
  }
}

Status write_run_artifacts(const World& world, const fs::path& dir, bench::Format format) {
  std::error_code ec;
  fs::create_directories(dir / "proofs", ec);
  if (ec) return fail(Reason::IoError, "cannot create " + dir.string() + ": " + ec.message());

  if (auto s = write_text(dir / "scenario.yaml", dump_scenario(world.config())); !s) return s;

  std::ostringstream keys;
  for (const auto& k : world.key_listing()) keys << k.label << ' ' << to_string(k.role) << ' ' << k.id.value << '\n';
  if (auto s = write_text(dir / "keys.txt", keys.str()); !s) return s;

  const int h = world.honest_node();
  try {
    write_chain_file(dir / "decisions.chain", ChainKind::Decision, world.decision_chain(h).entries());
    write_chain_file(dir / "provenance.chain", ChainKind::Provenance, world.provenance_chain(h).entries());
  } catch (const Error& e) {
    return fail(e.reason(), e.what());
  }

  std::ostringstream acc;
  auto acceptance = world.acceptance();
  acc << "nodes " << world.n_supervisors() << '\n';
  for (const auto& b : world.decision_chain(h).blocks()) acc << b.id.hex() << ' ' << acceptance.accepted_by(b.id) << '\n';
  if (auto s = write_text(dir / "acceptance.txt", acc.str()); !s) return s;

  for (const auto& o : world.outcomes()) {
    if (const auto* p = world.presented_proof(o.instance))
      if (auto s = write_proof_file(dir / "proofs" / (std::to_string(o.instance) + ".hex"), *p); !s) return s;
  }

  std::ostringstream outcomes;
  bench::write_outcomes(outcomes, world.outcomes(), format, world.config().wall_time);
  if (auto s = write_text(dir / ("outcomes." + std::string(extension(format))), outcomes.str()); !s) return s;

  std::ostringstream trace;
  world.write_trace(trace);
  return write_text(dir / "trace.jsonl", trace.str());
}

Result<ChainDir> load_chain_dir(const fs::path& dir) {
  ChainDir out;
  auto keys = read_text(dir / "keys.txt");
  if (!keys) return keys.failure();
  std::istringstream ks(*keys);
  std::string label, role, id;
  while (ks >> label >> role >> id) {
    auto r = role_from(role);
    if (!r) return r.failure();
    try {
      auto pub = PublicKey::from_sec1(from_hex(id));
      if (!pub) return pub.failure();
      if (auto s = out.keys.add(EntityId(id), *r, *pub); !s) return s.failure();
    } catch (const Error& e) {
      return fail(e.reason(), e.what());
    }
  }

  try {
    auto d = read_chain_file(dir / "decisions.chain");
    if (d.kind != ChainKind::Decision) return fail(Reason::ParseError, "decisions.chain holds another chain kind");
    auto decisions = DecisionChain::from_entries(d.entries);
    if (!decisions) return decisions.failure();
    out.decisions = std::move(*decisions);
    auto p = read_chain_file(dir / "provenance.chain");
    if (p.kind != ChainKind::Provenance) return fail(Reason::ParseError, "provenance.chain holds another chain kind");
    auto provenance = ProvenanceChain::from_entries(p.entries);
    if (!provenance) return provenance.failure();
    out.provenance = std::move(*provenance);
  } catch (const Error& e) {
    return fail(e.reason(), e.what());
  }

  auto acc = read_text(dir / "acceptance.txt");
  if (!acc) return acc.failure();
  std::istringstream as(*acc);
  std::string word;
  if (!(as >> word >> out.n_nodes) || word != "nodes" || out.n_nodes < 1)
    return fail(Reason::ParseError, "acceptance.txt: expected 'nodes N'");
  std::string hex;
  int count = 0;
  while (as >> hex >> count) {
    try {
      out.accepted[Digest::from_bytes(from_hex(hex))] = count;
    } catch (const Error& e) {
      return fail(e.reason(), e.what());
    }
  }
  return out;
}

}  // namespace lpchain::sim
