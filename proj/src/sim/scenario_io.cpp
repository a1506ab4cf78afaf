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

#include "lpchain/sim/scenario_io.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace lpchain::sim {

namespace {

struct ParseFailure {
  std::string what;
};

[[noreturn]] void bad(const std::string& what) { throw ParseFailure{what}; }

void only(const YAML::Node& map, const std::string& where, std::initializer_list<std::string_view> keys) {
  if (!map.IsMap()) bad(where + ": expected a map");
  std::set<std::string_view> allowed(keys);
  for (const auto& kv : map) {
    auto k = kv.first.as<std::string>();
    if (!allowed.count(k)) bad(where + ": unknown key '" + k + "'");
  }
}

template <class T>
T number(const YAML::Node& n, const std::string& key) {
  if (!n.IsScalar()) bad(key + ": expected a scalar");
  const std::string& s = n.Scalar();
  T out{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size()) bad(key + ": bad number '" + s + "'");
  return out;
}

bool boolean(const YAML::Node& n, const std::string& key) {
  if (!n.IsScalar()) bad(key + ": expected true or false");
  const std::string& s = n.Scalar();
  if (s == "true") return true;
  if (s == "false") return false;
  bad(key + ": expected true or false, got '" + s + "'");
}

template <class T>
void read(const YAML::Node& map, const char* key, T& out) {
  YAML::Node n = map[key];
  if (!n) return;
  if constexpr (std::is_same_v<T, bool>)
    out = boolean(n, key);
  else if constexpr (std::is_same_v<T, std::string>)
    out = n.as<std::string>();
  else
    out = number<T>(n, key);
}

template <class T>
void read(const YAML::Node& map, const char* key, std::optional<T>& out) {
  YAML::Node n = map[key];
  if (!n) return;
  if (n.IsNull()) {
    out.reset();
    return;
  }
  T v{};
  read(map, key, v);
  out = v;
}

WorkerRole parse_role(const std::string& s) {
  if (s == "mobile") return WorkerRole::Mobile;
  if (s == "la") return WorkerRole::LocationAuthority;
  bad("role: expected mobile or la, got '" + s + "'");
}

SupervisorAttack parse_attack(const std::string& s) {
  if (s == "none") return SupervisorAttack::None;
  if (s == "echo_pair") return SupervisorAttack::EchoPair;
  if (s == "fabricate_approval") return SupervisorAttack::FabricateApproval;
  if (s == "substitute_pair") return SupervisorAttack::SubstitutePair;
  bad("supervisor.attack: unknown value '" + s + "'");
}

void read_behavior(const YAML::Node& n, AdversaryBehavior& b) {
  only(n, "behavior", {"prover", "witness", "la", "supervisor"});
  if (auto p = n["prover"]) {
    only(p, "behavior.prover",
         {"tamper_proof", "replay_old_approval", "fabricate_approval", "wormhole_relay_ms", "false_presence_m",
          "back_date_ms", "recruit_accomplices"});
    read(p, "tamper_proof", b.prover.tamper_proof);
    read(p, "replay_old_approval", b.prover.replay_old_approval);
    read(p, "fabricate_approval", b.prover.fabricate_approval);
    read(p, "wormhole_relay_ms", b.prover.wormhole_relay_ms);
    read(p, "false_presence_m", b.prover.false_presence_m);
    read(p, "back_date_ms", b.prover.back_date_ms);
    read(p, "recruit_accomplices", b.prover.recruit_accomplices);
  }
  if (auto w = n["witness"]) {
    only(w, "behavior.witness", {"false_endorsement", "false_time_offset_ms"});
    read(w, "false_endorsement", b.witness.false_endorsement);
    read(w, "false_time_offset_ms", b.witness.false_time_offset_ms);
  }
  if (auto l = n["la"]) {
    only(l, "behavior.la", {"deny_service", "implicate_prover", "relay_to_puppet", "false_assertion"});
    read(l, "deny_service", b.la.deny_service);
    read(l, "implicate_prover", b.la.implicate_prover);
    read(l, "relay_to_puppet", b.la.relay_to_puppet);
    read(l, "false_assertion", b.la.false_assertion);
  }
  if (auto s = n["supervisor"]) {
    only(s, "behavior.supervisor", {"attack"});
    if (s["attack"]) b.supervisor.attack = parse_attack(s["attack"].as<std::string>());
  }
}

ScenarioConfig read_config(const YAML::Node& root) {
  only(root, "scenario",
       {"seed", "key_seed", "n_supervisors", "k", "key_size", "workers", "population", "provers",
        "prover_generator", "latency", "cost", "range_limit_m", "ping_interval_ms", "ping_timeout_ms", "warmup_ms",
        "freshness_window_ms", "consensus_timeout_ms", "decision_skew_ms", "localization_latency_ms",
        "step_timeout_ms", "temporal_range_ms", "response_delay_bound_ms", "attack_case", "behavior",
        "compromised_supervisor_fraction", "allow_compromised_majority", "event_budget", "wall_time"});
  ScenarioConfig c;
  read(root, "seed", c.seed);
  read(root, "key_seed", c.key_seed);
  read(root, "n_supervisors", c.n_supervisors);
  read(root, "k", c.k);
  read(root, "key_size", c.key_size);
  read(root, "range_limit_m", c.range_limit_m);
  read(root, "ping_interval_ms", c.ping_interval_ms);
  read(root, "ping_timeout_ms", c.ping_timeout_ms);
  read(root, "warmup_ms", c.warmup_ms);
  read(root, "freshness_window_ms", c.freshness_window_ms);
  read(root, "consensus_timeout_ms", c.consensus_timeout_ms);
  read(root, "decision_skew_ms", c.decision_skew_ms);
  read(root, "localization_latency_ms", c.localization_latency_ms);
  read(root, "step_timeout_ms", c.step_timeout_ms);
  read(root, "temporal_range_ms", c.temporal_range_ms);
  read(root, "response_delay_bound_ms", c.response_delay_bound_ms);
  read(root, "attack_case", c.attack_case);
  read(root, "compromised_supervisor_fraction", c.compromised_supervisor_fraction);
  read(root, "allow_compromised_majority", c.allow_compromised_majority);
  read(root, "event_budget", c.event_budget);
  read(root, "wall_time", c.wall_time);

  if (auto l = root["latency"]) {
    only(l, "latency", {"p2p_min_ms", "p2p_max_ms", "broadcast_min_ms", "broadcast_max_ms"});
    read(l, "p2p_min_ms", c.latency.p2p_min_ms);
    read(l, "p2p_max_ms", c.latency.p2p_max_ms);
    read(l, "broadcast_min_ms", c.latency.broadcast_min_ms);
    read(l, "broadcast_max_ms", c.latency.broadcast_max_ms);
  }
  if (auto m = root["cost"]) {
    only(m, "cost", {"sign_us_224", "verify_us_224", "scan_us_per_worker"});
    read(m, "sign_us_224", c.cost.sign_us_224);
    read(m, "verify_us_224", c.cost.verify_us_224);
    read(m, "scan_us_per_worker", c.cost.scan_us_per_worker);
  }
  if (auto p = root["population"]) {
    only(p, "population",
         {"mobiles", "location_authorities", "area_m", "dishonest_mobile_fraction", "dishonest_la_fraction"});
    read(p, "mobiles", c.population.mobiles);
    read(p, "location_authorities", c.population.location_authorities);
    read(p, "area_m", c.population.area_m);
    read(p, "dishonest_mobile_fraction", c.population.dishonest_mobile_fraction);
    read(p, "dishonest_la_fraction", c.population.dishonest_la_fraction);
  }
  if (auto g = root["prover_generator"]) {
    only(g, "prover_generator",
         {"count", "requests_each", "request_spacing_ms", "concurrent_window_ms", "rrsn", "honest"});
    read(g, "count", c.prover_generator.count);
    read(g, "requests_each", c.prover_generator.requests_each);
    read(g, "request_spacing_ms", c.prover_generator.request_spacing_ms);
    read(g, "concurrent_window_ms", c.prover_generator.concurrent_window_ms);
    read(g, "rrsn", c.prover_generator.rrsn);
    read(g, "honest", c.prover_generator.honest);
  }
  if (auto ws = root["workers"]) {
    if (!ws.IsSequence()) bad("workers: expected a list");
    for (const auto& w : ws) {
      only(w, "workers[]", {"name", "role", "x", "y", "honest"});
      WorkerSpec s;
      read(w, "name", s.name);
      if (w["role"]) s.role = parse_role(w["role"].as<std::string>());
      read(w, "x", s.position.x);
      read(w, "y", s.position.y);
      read(w, "honest", s.honest);
      if (s.name.empty()) bad("workers[]: name is required");
      c.workers.push_back(std::move(s));
    }
  }
  if (auto ps = root["provers"]) {
    if (!ps.IsSequence()) bad("provers: expected a list");
    for (const auto& p : ps) {
      only(p, "provers[]", {"name", "x", "y", "honest", "request_offsets_ms", "rrsn"});
      ProverSpec s;
      read(p, "name", s.name);
      if (p["x"] || p["y"]) {
        GeoPoint g;
        read(p, "x", g.x);
        read(p, "y", g.y);
        s.position = g;
      }
      read(p, "honest", s.honest);
      read(p, "rrsn", s.rrsn);
      if (auto offs = p["request_offsets_ms"]) {
        if (!offs.IsSequence()) bad("request_offsets_ms: expected a list");
        s.request_offsets_ms.clear();
        for (const auto& o : offs) s.request_offsets_ms.push_back(number<std::int64_t>(o, "request_offsets_ms"));
      }
      c.provers.push_back(std::move(s));
    }
  }
  if (auto b = root["behavior"]) read_behavior(b, c.behavior);
  return c;
}

// Shortest round-tripping text for doubles.
std::string num(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

template <class T>
std::string num(T v) {
  return std::to_string(v);
}

std::string_view flag(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string_view to_string(SupervisorAttack a) {
  switch (a) {
    case SupervisorAttack::None: return "none";
    case SupervisorAttack::EchoPair: return "echo_pair";
    case SupervisorAttack::FabricateApproval: return "fabricate_approval";
    case SupervisorAttack::SubstitutePair: return "substitute_pair";
  }
  return "?";
}

Result<ScenarioConfig> parse_scenario(std::string_view text) {
  try {
    YAML::Node root = YAML::Load(std::string(text));
    if (root.IsNull()) return ScenarioConfig{};
    return read_config(root);
  } catch (const ParseFailure& e) {
    return fail(Reason::ParseError, e.what);
  } catch (const YAML::Exception& e) {
    return fail(Reason::ParseError, e.what());
  }
}

Result<ScenarioConfig> load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return fail(Reason::IoError, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string dump_scenario(const ScenarioConfig& c) {
  YAML::Emitter out;
  auto kv = [&](const char* k, const std::string& v) { out << YAML::Key << k << YAML::Value << v; };
  auto kvs = [&](const char* k, std::string_view v) { kv(k, std::string(v)); };
  out << YAML::BeginMap;
  kv("seed", num(c.seed));
  kv("key_seed", num(c.key_seed));
  kv("n_supervisors", num(c.n_supervisors));
  kv("k", num(c.k));
  kv("key_size", num(c.key_size));
  kv("range_limit_m", num(c.range_limit_m));
  kv("ping_interval_ms", num(c.ping_interval_ms));
  kv("ping_timeout_ms", num(c.ping_timeout_ms));
  kv("warmup_ms", num(c.warmup_ms));
  kv("freshness_window_ms", num(c.freshness_window_ms));
  kv("consensus_timeout_ms", num(c.consensus_timeout_ms));
  kv("decision_skew_ms", num(c.decision_skew_ms));
  kv("localization_latency_ms", num(c.localization_latency_ms));
  kv("step_timeout_ms", num(c.step_timeout_ms));
  if (c.temporal_range_ms) kv("temporal_range_ms", num(*c.temporal_range_ms));
  if (c.response_delay_bound_ms) kv("response_delay_bound_ms", num(*c.response_delay_bound_ms));
  kv("attack_case", num(c.attack_case));
  kv("compromised_supervisor_fraction", num(c.compromised_supervisor_fraction));
  kvs("allow_compromised_majority", flag(c.allow_compromised_majority));
  kv("event_budget", num(c.event_budget));
  kvs("wall_time", flag(c.wall_time));

  out << YAML::Key << "latency" << YAML::Value << YAML::BeginMap;
  kv("p2p_min_ms", num(c.latency.p2p_min_ms));
  kv("p2p_max_ms", num(c.latency.p2p_max_ms));
  kv("broadcast_min_ms", num(c.latency.broadcast_min_ms));
  kv("broadcast_max_ms", num(c.latency.broadcast_max_ms));
  out << YAML::EndMap;

  out << YAML::Key << "cost" << YAML::Value << YAML::BeginMap;
  kv("sign_us_224", num(c.cost.sign_us_224));
  kv("verify_us_224", num(c.cost.verify_us_224));
  kv("scan_us_per_worker", num(c.cost.scan_us_per_worker));
  out << YAML::EndMap;

  out << YAML::Key << "population" << YAML::Value << YAML::BeginMap;
  kv("mobiles", num(c.population.mobiles));
  kv("location_authorities", num(c.population.location_authorities));
  kv("area_m", num(c.population.area_m));
  kv("dishonest_mobile_fraction", num(c.population.dishonest_mobile_fraction));
  kv("dishonest_la_fraction", num(c.population.dishonest_la_fraction));
  out << YAML::EndMap;

  const auto& g = c.prover_generator;
  out << YAML::Key << "prover_generator" << YAML::Value << YAML::BeginMap;
  kv("count", num(g.count));
  kv("requests_each", num(g.requests_each));
  kv("request_spacing_ms", num(g.request_spacing_ms));
  kv("concurrent_window_ms", num(g.concurrent_window_ms));
  if (g.rrsn) kv("rrsn", num(*g.rrsn));
  kvs("honest", flag(g.honest));
  out << YAML::EndMap;

  if (!c.workers.empty()) {
    out << YAML::Key << "workers" << YAML::Value << YAML::BeginSeq;
    for (const auto& w : c.workers) {
      out << YAML::Flow << YAML::BeginMap;
      kv("name", w.name);
      kvs("role", w.role == WorkerRole::Mobile ? "mobile" : "la");
      kv("x", num(w.position.x));
      kv("y", num(w.position.y));
      kvs("honest", flag(w.honest));
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  if (!c.provers.empty()) {
    out << YAML::Key << "provers" << YAML::Value << YAML::BeginSeq;
    for (const auto& p : c.provers) {
      out << YAML::BeginMap;
      kv("name", p.name);
      if (p.position) {
        kv("x", num(p.position->x));
        kv("y", num(p.position->y));
      }
      kvs("honest", flag(p.honest));
      if (p.rrsn) kv("rrsn", num(*p.rrsn));
      out << YAML::Key << "request_offsets_ms" << YAML::Value << YAML::Flow << YAML::BeginSeq;
      for (auto o : p.request_offsets_ms) out << num(o);
      out << YAML::EndSeq;
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }

  const auto& b = c.behavior;
  out << YAML::Key << "behavior" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "prover" << YAML::Value << YAML::BeginMap;
  kvs("tamper_proof", flag(b.prover.tamper_proof));
  kvs("replay_old_approval", flag(b.prover.replay_old_approval));
  kvs("fabricate_approval", flag(b.prover.fabricate_approval));
  kv("wormhole_relay_ms", num(b.prover.wormhole_relay_ms));
  kv("false_presence_m", num(b.prover.false_presence_m));
  kv("back_date_ms", num(b.prover.back_date_ms));
  kvs("recruit_accomplices", flag(b.prover.recruit_accomplices));
  out << YAML::EndMap;
  out << YAML::Key << "witness" << YAML::Value << YAML::BeginMap;
  kvs("false_endorsement", flag(b.witness.false_endorsement));
  kv("false_time_offset_ms", num(b.witness.false_time_offset_ms));
  out << YAML::EndMap;
  out << YAML::Key << "la" << YAML::Value << YAML::BeginMap;
  kvs("deny_service", flag(b.la.deny_service));
  kvs("implicate_prover", flag(b.la.implicate_prover));
  kvs("relay_to_puppet", flag(b.la.relay_to_puppet));
  kvs("false_assertion", flag(b.la.false_assertion));
  out << YAML::EndMap;
  out << YAML::Key << "supervisor" << YAML::Value << YAML::BeginMap;
  kvs("attack", to_string(b.supervisor.attack));
  out << YAML::EndMap;
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

Digest config_digest(const ScenarioConfig& config) { return digest(to_bytes(dump_scenario(config))); }

}  // namespace lpchain::sim
