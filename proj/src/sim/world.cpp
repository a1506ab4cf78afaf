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

#include "lpchain/sim/world.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <tuple>
#include <unordered_map>

#include "json.hpp"
#include "lpchain/sim/adversary.hpp"

namespace lpchain::sim {

namespace {

using Micros = std::int64_t;
using WallClock = std::chrono::steady_clock;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

enum class KeyCategory : int { Supervisor = 0, Mobile = 1, Authority = 2, Prover = 3, Puppet = 4 };

// Key generation dominates world construction, so identities are shared
// across worlds built in the same process.
const Identity& cached_identity(std::uint64_t key_seed, KeyCategory category, int index, int bits) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint64_t, int, int, int>, std::unique_ptr<Identity>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_tuple(key_seed, static_cast<int>(category), index, bits);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  std::uint64_t seed = splitmix(splitmix(key_seed) ^ (static_cast<std::uint64_t>(category) << 40) ^
                                static_cast<std::uint64_t>(index));
  auto id = make_identity(seed, bits);
  if (!id) throw Error(id.reason(), "key generation failed");
  return *cache.emplace(key, std::make_unique<Identity>(std::move(*id))).first->second;
}

// mt19937_64 output is specified by the standard; the distributions are not,
// so the mapping to doubles is done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(splitmix(seed)) {}
  double unit() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(unit() * static_cast<double>(n)); }

 private:
  std::mt19937_64 g_;
};

struct Event {
  Micros at;
  std::uint64_t seq;
  std::function<void()> fn;
};

struct EventLater {
  bool operator()(const Event& a, const Event& b) const {
    return a.at != b.at ? a.at > b.at : a.seq > b.seq;
  }
};

constexpr std::uint64_t kNoInstance = ~0ULL;

}  // namespace

struct World::Impl {
  struct Actor {
    std::string label;
    Micros busy_until = 0;
    std::deque<std::function<void()>> mailbox;
    bool draining = false;
  };

  struct Node {
    std::unique_ptr<SupervisorNode> node;
    DecisionChain decisions;
    ProvenanceChain provenance;
    bool compromised = false;
    int actor = 0;
  };

  struct Entity {
    explicit Entity(Identity id) : identity(std::move(id)) {}

    std::string label;
    Identity identity;
    WorkerRole role = WorkerRole::Mobile;
    GeoPoint position;  // reported position
    GeoPoint truth;     // where localization finds it
    bool honest = true;
    bool prover = false;
    Micros join_us = 0;
    int actor = 0;
    std::unique_ptr<WitnessAgent> witness;
    std::unique_ptr<LocationAuthorityAgent> la;
    std::optional<ApprovalMessage> last_approval;
  };

  struct Instance {
    std::uint64_t id = 0;
    int prover = 0;
    int rrsn = 0;
    Micros start_us = 0;
    bool attacked = false;
    std::unique_ptr<ProverAgent> agent;

    std::optional<ProofRequest> preq;
    std::optional<BroadcastRequest> breq;
    std::optional<Selection> accomplices;
    std::vector<DecisionAck> substitute_acks;
    bool block_proposed = false;
    std::optional<DecisionBlock> block;
    std::optional<ApprovalMessage> approval;
    int la = -1;
    int witness = -1;
    int committer = -1;
    bool puppet_used = false;
    std::optional<AssertedLocationProof> alp;
    std::optional<AssertedLocationProof> presented;

    int appended = 0;
    int rejected = 0;
    std::optional<Reason> first_reject;
    bool reject_from_honest = false;
    std::optional<RunVerdict> verdict;
    std::optional<Reason> reason;
    std::uint64_t progress = 0;

    Micros created_us = -1, arrival_us = -1, approval_us = -1, alp_us = -1;
    WallClock::time_point wall_created, wall_arrival, wall_approval, wall_alp;
    std::size_t proof_bytes = 0;
    std::size_t block_bytes = 0;
  };

  ScenarioConfig config;
  AdversaryBehavior behavior;
  int bits = 224;
  ConsensusConfig consensus;
  RegistryConfig registry_config;
  ServiceConfig service;
  LedgerConfig ledger;
  KeyDirectory keys;
  Rng rng;

  std::vector<Actor> actors;
  std::vector<Node> nodes;
  std::unordered_map<EntityId, int, EntityIdHash> node_index;
  std::vector<Entity> entities;
  std::unordered_map<EntityId, int, EntityIdHash> entity_index;
  std::optional<Identity> puppet;
  int puppet_actor = -1;
  std::vector<Instance> instances;
  std::unordered_map<Digest, int, DigestHash> accepted;
  std::vector<ProtocolOutcome> outcomes;

  std::vector<Event> queue;
  std::uint64_t seq = 0;
  Micros now = 0;
  Micros cursor = 0;
  std::uint64_t processed = 0;
  std::size_t terminal = 0;
  bool finished = false;
  bool ran = false;

  bool trace_on = true;
  std::vector<std::string> trace;

  explicit Impl(const ScenarioConfig& c)
      : config(c),
        behavior(c.behavior),
        bits(c.key_size),
        consensus(c.consensus()),
        registry_config(c.registry()),
        service(c.service()),
        ledger(c.ledger()),
        rng(c.seed) {}

  // ---- engine

  void schedule(Micros at, std::function<void()> fn) {
    queue.push_back(Event{at, seq++, std::move(fn)});
    std::push_heap(queue.begin(), queue.end(), EventLater{});
  }

  // Delivers fn to the actor's mailbox at `at`. Mailboxes drain in arrival
  // order, one handler at a time. Handlers charge their compute cost to the
  // cursor; messages they send depart at now + cursor.
  void post(int actor, Micros at, std::function<void()> fn) {
    schedule(at, [this, actor, fn = std::move(fn)]() mutable {
      Actor& a = actors[static_cast<std::size_t>(actor)];
      a.mailbox.push_back(std::move(fn));
      if (!a.draining) {
        a.draining = true;
        schedule(std::max(now, a.busy_until), [this, actor] { drain(actor); });
      }
    });
  }

  void drain(int actor) {
    Actor& a = actors[static_cast<std::size_t>(actor)];
    std::function<void()> fn = std::move(a.mailbox.front());
    a.mailbox.pop_front();
    cursor = 0;
    fn();
    Actor& b = actors[static_cast<std::size_t>(actor)];
    b.busy_until = now + cursor;
    cursor = 0;
    if (b.mailbox.empty())
      b.draining = false;
    else
      schedule(b.busy_until, [this, actor] { drain(actor); });
  }

  Micros clock_us() const { return now + cursor; }
  Timestamp stamp() const { return Timestamp{clock_us() / 1000}; }
  void charge(std::int64_t us) { cursor += us; }
  std::int64_t sign_cost() const { return config.cost.sign_us(bits); }
  std::int64_t verify_cost() const { return config.cost.verify_us(bits); }

  Micros draw_ms(double lo, double hi) { return std::llround(rng.uniform(lo, hi) * 1000.0); }

  // Point-to-point message; fn receives the arrival time.
  void send(int to, Micros extra, std::function<void(Micros)> fn) {
    Micros at = clock_us() + draw_ms(config.latency.p2p_min_ms, config.latency.p2p_max_ms) + extra;
    post(to, at, [fn = std::move(fn), at] { fn(at); });
  }

  // Total-order broadcast to every supervisor node, sender included.
  void broadcast(std::function<void(int)> fn) {
    Micros at = clock_us() + draw_ms(config.latency.broadcast_min_ms, config.latency.broadcast_max_ms);
    for (int n = 0; n < static_cast<int>(nodes.size()); ++n)
      post(nodes[static_cast<std::size_t>(n)].actor, at, [fn, n] { fn(n); });
  }

  Status run_loop() {
    while (!queue.empty()) {
      if (++processed > config.event_budget)
        return fail(Reason::NonTermination, "event budget exhausted at t=" + std::to_string(now) + "us");
      std::pop_heap(queue.begin(), queue.end(), EventLater{});
      Event e = std::move(queue.back());
      queue.pop_back();
      now = e.at;
      e.fn();
    }
    return ok_status();
  }

  // ---- trace

  void note(int actor, std::string_view event, std::uint64_t instance, std::string_view detail = {}) {
    if (!trace_on) return;
    nlohmann::ordered_json j;
    j["t_us"] = clock_us();
    j["actor"] = actors[static_cast<std::size_t>(actor)].label;
    j["event"] = event;
    if (instance != kNoInstance) j["instance"] = instance;
    if (!detail.empty()) j["detail"] = detail;
    trace.push_back(j.dump());
  }

  // ---- construction

  int add_actor(std::string label) {
    actors.push_back(Actor{std::move(label), 0, {}, false});
    return static_cast<int>(actors.size()) - 1;
  }

  void add_entity(std::string label, const Identity& id, WorkerRole role, GeoPoint pos, bool honest, bool prover) {
    Entity e(id);
    e.label = label;
    e.role = role;
    e.position = pos;
    e.truth = pos;
    e.honest = honest;
    e.prover = prover;
    e.actor = add_actor(std::move(label));
    auto role_key = role == WorkerRole::Mobile ? EntityRole::Mobile : EntityRole::LocationAuthority;
    if (auto s = keys.add(id.id, role_key, id.pub); !s) throw Error(s.reason(), "duplicate identity " + e.label);
    if (role == WorkerRole::Mobile)
      e.witness = std::make_unique<WitnessAgent>(id, keys, service);
    else
      e.la = std::make_unique<LocationAuthorityAgent>(id, keys, service);
    entity_index.emplace(id.id, static_cast<int>(entities.size()));
    entities.push_back(std::move(e));
  }

  std::vector<bool> pick_dishonest(int n, double fraction) {
    std::vector<bool> out(static_cast<std::size_t>(n), false);
    auto count = static_cast<int>(std::ceil(fraction * n - 1e-9));
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i)
      std::swap(order[static_cast<std::size_t>(i)], order[rng.below(static_cast<std::size_t>(i) + 1)]);
    for (int i = 0; i < count && i < n; ++i) out[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = true;
    return out;
  }

  void build() {
    keys.set_memo(!config.wall_time);
    const int n = config.n_supervisors;
    const int compromised = config.compromised_count();
    for (int i = 0; i < n; ++i) {
      const Identity& id = cached_identity(config.key_seed, KeyCategory::Supervisor, i, bits);
      if (auto s = keys.add(id.id, EntityRole::Supervisor, id.pub); !s) throw Error(s.reason(), "supervisor key");
      Node node;
      node.node = std::make_unique<SupervisorNode>(id, keys, consensus, registry_config);
      node.compromised = i >= n - compromised;
      node.actor = add_actor("sn" + std::to_string(i));
      node_index.emplace(id.id, i);
      nodes.push_back(std::move(node));
    }

    if (!config.workers.empty()) {
      int m = 0, l = 0;
      for (const auto& w : config.workers) {
        bool mobile = w.role == WorkerRole::Mobile;
        const Identity& id = cached_identity(config.key_seed, mobile ? KeyCategory::Mobile : KeyCategory::Authority,
                                             mobile ? m++ : l++, bits);
        add_entity(w.name, id, w.role, w.position, w.honest, false);
      }
    } else {
      const auto& pop = config.population;
      // LAs sit on a grid, mobiles are uniform over the square.
      int grid = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(pop.location_authorities))));
      double cell = grid > 0 ? pop.area_m / grid : pop.area_m;
      auto la_bad = pick_dishonest(pop.location_authorities, pop.dishonest_la_fraction);
      for (int j = 0; j < pop.location_authorities; ++j) {
        GeoPoint p{(j % grid + 0.5) * cell, (j / grid + 0.5) * cell};
        add_entity("la" + std::to_string(j), cached_identity(config.key_seed, KeyCategory::Authority, j, bits),
                   WorkerRole::LocationAuthority, p, !la_bad[static_cast<std::size_t>(j)], false);
      }
      auto m_bad = pick_dishonest(pop.mobiles, pop.dishonest_mobile_fraction);
      for (int j = 0; j < pop.mobiles; ++j) {
        GeoPoint p{rng.uniform(0, pop.area_m), rng.uniform(0, pop.area_m)};
        add_entity("m" + std::to_string(j), cached_identity(config.key_seed, KeyCategory::Mobile, j, bits),
                   WorkerRole::Mobile, p, !m_bad[static_cast<std::size_t>(j)], false);
      }
    }

    std::vector<ProverSpec> provers = config.provers;
    if (provers.empty()) {
      const auto& g = config.prover_generator;
      std::vector<GeoPoint> anchors;
      for (const auto& e : entities)
        if (e.role == WorkerRole::LocationAuthority) anchors.push_back(e.position);
      for (int i = 0; i < g.count; ++i) {
        ProverSpec p;
        p.name = "p" + std::to_string(i);
        GeoPoint base = anchors.empty()
                            ? GeoPoint{rng.uniform(0, config.population.area_m), rng.uniform(0, config.population.area_m)}
                            : anchors[rng.below(anchors.size())];
        p.position = GeoPoint{base.x + rng.uniform(-30, 30), base.y + rng.uniform(-30, 30)};
        p.honest = g.honest;
        p.rrsn = g.rrsn;
        std::int64_t first = g.concurrent_window_ms > 0
                                 ? static_cast<std::int64_t>(rng.uniform(0, static_cast<double>(g.concurrent_window_ms)))
                                 : i * g.request_spacing_ms * g.requests_each;
        p.request_offsets_ms.clear();
        for (int r = 0; r < g.requests_each; ++r) p.request_offsets_ms.push_back(first + r * g.request_spacing_ms);
        provers.push_back(std::move(p));
      }
    }

    std::vector<int> prover_entities;
    for (std::size_t i = 0; i < provers.size(); ++i) {
      const auto& p = provers[i];
      GeoPoint pos = p.position ? *p.position : GeoPoint{rng.uniform(0, config.population.area_m),
                                                         rng.uniform(0, config.population.area_m)};
      add_entity(p.name, cached_identity(config.key_seed, KeyCategory::Prover, static_cast<int>(i), bits),
                 WorkerRole::Mobile, pos, p.honest, true);
      prover_entities.push_back(static_cast<int>(entities.size()) - 1);
    }

    puppet = cached_identity(config.key_seed, KeyCategory::Puppet, 0, bits);
    puppet_actor = add_actor("puppet");

    // Registration and pings.
    for (std::size_t e = 0; e < entities.size(); ++e) {
      entities[e].join_us = draw_ms(0, static_cast<double>(std::max<std::int64_t>(config.warmup_ms - 1, 0)));
      int idx = static_cast<int>(e);
      schedule(entities[e].join_us, [this, idx] { join(idx); });
    }
    schedule(config.ping_interval_ms * 1000, [this] { maintenance(); });

    // Requests.
    std::vector<std::tuple<std::int64_t, int, std::size_t>> starts;
    for (std::size_t i = 0; i < provers.size(); ++i)
      for (auto off : provers[i].request_offsets_ms) starts.emplace_back(off, prover_entities[i], i);
    std::stable_sort(starts.begin(), starts.end(),
                     [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
    for (const auto& [off, ent, spec] : starts) {
      Instance in;
      in.id = instances.size();
      in.prover = ent;
      in.rrsn = provers[spec].rrsn ? *provers[spec].rrsn : static_cast<int>(in.id % static_cast<std::uint64_t>(n));
      in.start_us = (config.warmup_ms + off) * 1000;
      in.agent = std::make_unique<ProverAgent>(entities[static_cast<std::size_t>(ent)].identity, keys);
      instances.push_back(std::move(in));
    }
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const Instance& in = instances[i];
      post(entities[static_cast<std::size_t>(in.prover)].actor, in.start_us, [this, i] { start_request(i); });
    }
    if (instances.empty()) finished = true;
  }

  // ---- registry upkeep

  void join(int e) {
    Entity& x = entities[static_cast<std::size_t>(e)];
    Timestamp t{now / 1000};
    for (auto& n : nodes) (void)n.node->registry().register_entity(x.identity.id, x.role, x.position, t);
    schedule(now + config.ping_interval_ms * 1000, [this, e] { ping(e); });
  }

  void ping(int e) {
    if (finished) return;
    Entity& x = entities[static_cast<std::size_t>(e)];
    Timestamp t{now / 1000};
    for (auto& n : nodes) {
      auto& reg = n.node->registry();
      if (!reg.record_ping(x.identity.id, x.position, t)) (void)reg.register_entity(x.identity.id, x.role, x.position, t);
    }
    schedule(now + config.ping_interval_ms * 1000, [this, e] { ping(e); });
  }

  void maintenance() {
    if (finished) return;
    Timestamp t{now / 1000};
    for (auto& n : nodes) (void)n.node->registry().evict_stale(t);
    schedule(now + config.ping_interval_ms * 1000, [this] { maintenance(); });
  }

  // ---- helpers

  Entity& ent(int i) { return entities[static_cast<std::size_t>(i)]; }
  Node& node(int i) { return nodes[static_cast<std::size_t>(i)]; }
  Instance& inst(std::size_t i) { return instances[i]; }

  bool dishonest(const Instance& in, int e) const {
    const Entity& x = entities[static_cast<std::size_t>(e)];
    if (!x.honest) return true;
    return in.accomplices && (x.identity.id == in.accomplices->witness || x.identity.id == in.accomplices->la);
  }

  bool prover_bad(const Instance& in) const { return !entities[static_cast<std::size_t>(in.prover)].honest; }

  Micros prover_extra(const Instance& in) const {
    if (!prover_bad(in)) return 0;
    return behavior.prover.wormhole_relay_ms * 1000;
  }

  GeoPoint claimed(const Instance& in) const { return entities[static_cast<std::size_t>(in.prover)].position; }

  GeoPoint observed(const Instance& in) const {
    const Entity& p = entities[static_cast<std::size_t>(in.prover)];
    // A wormhole accomplice answers localization at the claimed spot.
    if (p.honest) return p.truth;
    if (behavior.prover.wormhole_relay_ms > 0) return p.position;
    return GeoPoint{p.truth.x + behavior.prover.false_presence_m, p.truth.y};
  }

  int honest_index() const {
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
      if (!nodes[static_cast<std::size_t>(i)].compromised) return i;
    return 0;
  }

  int first_compromised() const {
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
      if (nodes[static_cast<std::size_t>(i)].compromised) return i;
    return -1;
  }

  void terminate(Instance& in, RunVerdict v, std::optional<Reason> r, int actor) {
    if (in.verdict) return;
    in.verdict = v;
    in.reason = r;
    std::string detail(to_string(v));
    if (r) detail += std::string(":") + std::string(to_string(*r));
    note(actor, "terminal", in.id, detail);
    if (++terminal == instances.size()) finished = true;
  }

  void abort(Instance& in, Reason r, int actor) {
    in.agent->abort();
    terminate(in, RunVerdict::AbortedInProtocol, r, actor);
  }

  // Arms the step watchdog; any later progress disarms it.
  void watch(Instance& in) {
    std::uint64_t p = ++in.progress;
    std::size_t i = in.id;
    int actor = ent(in.prover).actor;
    schedule(clock_us() + service.step_timeout_ms * 1000, [this, i, p, actor] {
      Instance& x = inst(i);
      if (!x.verdict && x.progress == p) abort(x, Reason::StepTimeout, actor);
    });
  }

  void bind(Instance& in, const ApprovalMessage& a) {
    in.approval = a;
    auto la = entity_index.find(a.la);
    in.la = la != entity_index.end() && ent(la->second).role == WorkerRole::LocationAuthority ? la->second : -1;
    auto w = entity_index.find(a.witness);
    in.witness = w != entity_index.end() && ent(w->second).role == WorkerRole::Mobile ? w->second : -1;
    auto sn = node_index.find(a.sig.signer);
    in.committer = sn != node_index.end() ? sn->second : in.rrsn;
  }

  // Lowest-priority in-range mobile and LA other than the honest choice.
  std::optional<Selection> recruit(const Instance& in) {
    const Registry& reg = node(in.rrsn).node->registry();
    Timestamp t = stamp();
    const EntityId& prover = ent(in.prover).identity.id;
    auto honest = reg.select_participants(prover, claimed(in), t);
    std::optional<std::pair<double, EntityId>> w, la;
    for (const auto& r : reg.records()) {
      if (r.id == prover) continue;
      if (honest && (r.id == honest->witness || r.id == honest->la)) continue;
      auto score = reg.priority_score(r, claimed(in), t);
      if (!score) continue;
      auto& slot = r.role == WorkerRole::Mobile ? w : la;
      if (!slot || *score < slot->first) slot = std::make_pair(*score, r.id);
    }
    if (!w || !la) return std::nullopt;
    return Selection{w->second, la->second};
  }

  // ---- protocol

  void start_request(std::size_t i) {
    Instance& in = inst(i);
    Entity& p = ent(in.prover);
    const ProverFlags& pf = behavior.prover;
    bool bad = !p.honest;
    in.created_us = clock_us();
    in.wall_created = WallClock::now();
    note(p.actor, "request", in.id);

    if (bad && pf.replay_old_approval && p.last_approval) {
      in.attacked = true;
      bind(in, *p.last_approval);
      send_lpreq(i, build_lpreq(*in.approval, stamp()));
      return;
    }

    ProofRequest preq = in.agent->make_request(p.position, Timestamp{stamp().millis - (bad ? pf.back_date_ms : 0)});
    charge(sign_cost());
    in.preq = preq;
    if (bad && (pf.back_date_ms > 0 || pf.false_presence_m > 0 || pf.wormhole_relay_ms > 0 || pf.tamper_proof))
      in.attacked = true;

    if (bad && pf.fabricate_approval) {
      // The prover signs an approval itself for a block that never existed.
      in.attacked = true;
      auto pair = recruit(in);
      if (!pair) {
        auto any = node(in.rrsn).node->registry().select_participants(p.identity.id, claimed(in), stamp());
        if (any) pair = *any;
      }
      if (!pair) {
        abort(in, Reason::NoEligibleWitness, p.actor);
        return;
      }
      DecisionBlock fake;
      fake.witness = pair->witness;
      fake.la = pair->la;
      fake.id = digest(to_bytes("unlisted block " + std::to_string(in.id)));
      ApprovalMessage a = make_approval(p.identity, preq, fake, stamp());
      charge(sign_cost());
      bind(in, a);
      for (int e : {in.la, in.witness}) {
        if (e < 0) continue;
        send(ent(e).actor, 0, [this, e, a](Micros) {
          if (ent(e).la) ent(e).la->receive_approval(a);
          if (ent(e).witness) ent(e).witness->receive_approval(a);
        });
      }
      send_lpreq(i, build_lpreq(a, stamp()));
      return;
    }

    if (bad && pf.recruit_accomplices) {
      in.attacked = true;
      in.accomplices = recruit(in);
    }

    int c = first_compromised();
    if (bad && in.accomplices && behavior.supervisor.attack == SupervisorAttack::FabricateApproval && c >= 0) {
      send(node(c).actor, prover_extra(in), [this, i, c](Micros) { fabricate_on_node(i, c); });
      return;
    }

    send(node(in.rrsn).actor, prover_extra(in), [this, i](Micros at) { rrsn_on_preq(i, at); });
  }

  void fabricate_on_node(std::size_t i, int c) {
    Instance& in = inst(i);
    Node& sn = node(c);
    DecisionBlock fake;
    fake.witness = in.accomplices->witness;
    fake.la = in.accomplices->la;
    fake.rrsn = sn.node->id();
    fake.t = stamp();
    fake.id = digest(to_bytes("unlisted block " + std::to_string(in.id)));
    charge(verify_cost() + sign_cost());
    note(sn.actor, "fabricate_approval", in.id);
    send_approval(i, make_approval(sn.node->identity(), *in.preq, fake, stamp()), sn.actor);
  }

  void rrsn_on_preq(std::size_t i, Micros at) {
    Instance& in = inst(i);
    Node& sn = node(in.rrsn);
    in.arrival_us = at;
    in.wall_arrival = WallClock::now();
    charge(verify_cost() + sign_cost());
    auto b = sn.node->receive_proof_request(*in.preq, stamp());
    note(sn.actor, "preq", in.id, b ? "" : to_string(b.reason()));
    if (!b) {
      terminate(in, RunVerdict::ConsensusFailed, b.reason(), sn.actor);
      return;
    }
    in.breq = *b;
    int actor = sn.actor;
    schedule(clock_us() + consensus.consensus_timeout_ms * 1000, [this, i, actor] {
      Instance& x = inst(i);
      if (x.block_proposed || x.verdict) return;
      node(x.rrsn).node->expire(x.breq->preq);
      terminate(x, RunVerdict::ConsensusFailed, Reason::ConsensusTimeout, actor);
    });
    BroadcastRequest breq = *b;
    broadcast([this, i, breq](int n) { sn_on_breq(i, n, breq); });
  }

  bool echoes(const Instance& in, const Node& sn) const {
    auto a = behavior.supervisor.attack;
    return sn.compromised && in.accomplices && (a == SupervisorAttack::EchoPair || a == SupervisorAttack::SubstitutePair);
  }

  void sn_on_breq(std::size_t i, int n, const BroadcastRequest& breq) {
    Instance& in = inst(i);
    Node& sn = node(n);
    charge(2 * verify_cost() +
           std::llround(config.cost.scan_us_per_worker * static_cast<double>(sn.node->registry().size())) +
           sign_cost());
    auto ack = echoes(in, sn) ? sn.node->evaluate_request_with(breq, *in.accomplices, stamp())
                              : sn.node->evaluate_request(breq, stamp());
    if (!ack) {
      note(sn.actor, "decline", in.id, to_string(ack.reason()));
      return;
    }
    note(sn.actor, "ack", in.id);
    DecisionAck a = *ack;
    send(node(in.rrsn).actor, 0, [this, i, a](Micros) { rrsn_on_ack(i, a); });
  }

  void rrsn_on_ack(std::size_t i, const DecisionAck& ack) {
    Instance& in = inst(i);
    Node& sn = node(in.rrsn);
    if (in.block_proposed || in.verdict) return;
    charge(verify_cost());
    if (sn.compromised && in.accomplices && behavior.supervisor.attack == SupervisorAttack::SubstitutePair) {
      if (ack.witness_choice == in.accomplices->witness && ack.la_choice == in.accomplices->la &&
          keys.verify_as(ack.sig, signed_payload(ack), EntityRole::Supervisor))
        in.substitute_acks.push_back(ack);
      if (static_cast<int>(in.substitute_acks.size()) == config.compromised_count())
        propose(i, ReadyQuorum{*in.breq, *in.accomplices, in.substitute_acks});
      return;
    }
    auto r = sn.node->accumulate_ack(ack);
    if (!r) {
      note(sn.actor, "ack_rejected", in.id, to_string(r.reason()));
      return;
    }
    if (*r) propose(i, **r);
  }

  void propose(std::size_t i, const ReadyQuorum& ready) {
    Instance& in = inst(i);
    Node& sn = node(in.rrsn);
    in.block_proposed = true;
    charge(sign_cost());
    DecisionBlock body = build_decision_block(sn.node->identity(), ready, stamp());
    note(sn.actor, "propose", in.id);
    broadcast([this, i, body](int n) { sn_on_block(i, n, body); });
  }

  void sn_on_block(std::size_t i, int n, const DecisionBlock& body) {
    Instance& in = inst(i);
    Node& sn = node(n);
    charge(verify_cost() * static_cast<std::int64_t>(1 + body.acks.size()));
    DecisionBlock b = body;
    b.id = compute_block_id(sn.decisions.head(), b);
    Status s = sn.compromised ? ok_status() : sn.node->validate_decision_block(b);
    if (s) s = sn.decisions.append_decision(b);
    if (s) ++accepted[b.id];
    note(sn.actor, s ? "block_accepted" : "block_rejected", in.id, s ? b.id.hex() : std::string(to_string(s.reason())));
    if (n != in.rrsn) return;
    if (!s) {
      terminate(in, RunVerdict::ConsensusFailed, s.reason(), sn.actor);
      return;
    }
    in.block = b;
    in.block_bytes = encode(b).size();
    charge(sign_cost());
    ApprovalMessage a = make_approval(sn.node->identity(), in.breq->preq, b, stamp());
    auto w = entity_index.find(b.witness);
    if (w == entity_index.end()) {
      send_approval(i, a, sn.actor);
      return;
    }
    // Liveness ping to the witness before handing out the approval.
    int wa = ent(w->second).actor, sa = sn.actor;
    send(wa, 0, [this, i, a, sa](Micros) {
      send(sa, 0, [this, i, a, sa](Micros) { send_approval(i, a, sa); });
    });
  }

  void send_approval(std::size_t i, const ApprovalMessage& a, int from) {
    Instance& in = inst(i);
    bind(in, a);
    note(from, "approval", in.id);
    for (int e : {in.la, in.witness}) {
      if (e < 0) continue;
      send(ent(e).actor, 0, [this, e, a](Micros) {
        if (ent(e).la) ent(e).la->receive_approval(a);
        if (ent(e).witness) ent(e).witness->receive_approval(a);
      });
    }
    send(ent(in.prover).actor, prover_extra(in), [this, i, a](Micros at) { prover_on_approval(i, a, at); });
  }

  void prover_on_approval(std::size_t i, const ApprovalMessage& a, Micros at) {
    Instance& in = inst(i);
    Entity& p = ent(in.prover);
    if (in.verdict) return;
    in.approval_us = at;
    in.wall_approval = WallClock::now();
    charge(verify_cost());
    p.last_approval = a;
    auto r = in.agent->prover_start(a, stamp());
    if (!r) {
      abort(in, r.reason(), p.actor);
      return;
    }
    send_lpreq(i, *r);
  }

  void send_lpreq(std::size_t i, const LocationProofRequest& lpreq) {
    Instance& in = inst(i);
    int from = ent(in.prover).actor;
    if (in.la < 0) {
      abort(in, Reason::NotDesignatedLA, from);
      return;
    }
    note(from, "lpreq", in.id);
    watch(in);
    send(ent(in.la).actor, prover_extra(in), [this, i, lpreq](Micros) { la_on_lpreq(i, lpreq); });
  }

  bool la_bad(const Instance& in) const { return dishonest(in, in.la) && behavior.la.any(); }
  bool witness_bad(const Instance& in) const { return in.witness >= 0 && dishonest(in, in.witness) && behavior.witness.any(); }

  void la_on_lpreq(std::size_t i, const LocationProofRequest& lpreq) {
    Instance& in = inst(i);
    Entity& la = ent(in.la);
    if (in.verdict) return;
    charge(verify_cost());
    bool bad = la_bad(in);
    if (bad) in.attacked = true;
    if (bad && behavior.la.deny_service) {
      note(la.actor, "deny", in.id);
      return;
    }
    bool skip = bad && (behavior.la.false_assertion || behavior.la.relay_to_puppet);
    GeoPoint seen = skip ? claimed(in) : observed(in);
    int actor = la.actor;
    // Localization runs off the executor.
    post(actor, clock_us() + service.localization_latency_ms * 1000,
         [this, i, lpreq, seen] { la_issue(i, lpreq, seen); });
  }

  void la_issue(std::size_t i, const LocationProofRequest& lpreq, GeoPoint seen) {
    Instance& in = inst(i);
    Entity& la = ent(in.la);
    if (in.verdict) return;
    charge(sign_cost());
    auto r = la.la->la_issue_proof(lpreq, seen, stamp());
    note(la.actor, "lp", in.id, r ? "" : to_string(r.reason()));
    if (!r) {
      abort(in, r.reason(), la.actor);
      return;
    }
    AssertionRequest areq = *r;
    watch(in);
    if (la_bad(in) && behavior.la.relay_to_puppet) {
      send(puppet_actor, 0, [this, i, areq](Micros) { puppet_on_areq(i, areq); });
      return;
    }
    if (in.witness < 0) {
      abort(in, Reason::NotDesignatedWitness, la.actor);
      return;
    }
    send(ent(in.witness).actor, 0, [this, i, areq](Micros) { witness_on_areq(i, areq); });
  }

  void witness_on_areq(std::size_t i, const AssertionRequest& areq) {
    Instance& in = inst(i);
    if (in.verdict) return;
    charge(2 * verify_cost());
    bool bad = witness_bad(in);
    if (bad) in.attacked = true;
    GeoPoint seen = bad && behavior.witness.false_endorsement ? claimed(in) : observed(in);
    post(ent(in.witness).actor, clock_us() + service.localization_latency_ms * 1000,
         [this, i, areq, seen] { witness_assert(i, areq, seen); });
  }

  void witness_assert(std::size_t i, const AssertionRequest& areq, GeoPoint seen) {
    Instance& in = inst(i);
    Entity& w = ent(in.witness);
    if (in.verdict) return;
    charge(sign_cost());
    auto r = w.witness->witness_assert(areq, seen, stamp());
    note(w.actor, "assert", in.id, r ? "" : to_string(r.reason()));
    if (!r) {
      abort(in, r.reason(), w.actor);
      return;
    }
    AssertedLocationProof alp = *r;
    std::int64_t offset = behavior.witness.false_time_offset_ms;
    if (witness_bad(in) && offset != 0) {
      Timestamp t = stamp() + offset;
      alp = build_alp(w.identity, areq, w.identity.id, t, t);
      charge(sign_cost());
    }
    watch(in);
    send(ent(in.la).actor, 0, [this, i, alp](Micros) { la_on_alp(i, alp); });
  }

  void puppet_on_areq(std::size_t i, const AssertionRequest& areq) {
    Instance& in = inst(i);
    if (in.verdict) return;
    in.attacked = true;
    in.puppet_used = true;
    charge(verify_cost() + sign_cost());
    AssertedLocationProof alp = build_alp(*puppet, areq, in.approval->witness, stamp(), stamp());
    note(puppet_actor, "assert", in.id);
    watch(in);
    send(ent(in.la).actor, 0, [this, i, alp](Micros) { la_on_alp(i, alp); });
  }

  void la_on_alp(std::size_t i, const AssertedLocationProof& alp) {
    Instance& in = inst(i);
    Entity& la = ent(in.la);
    if (in.verdict) return;
    charge(verify_cost());
    bool bad = la_bad(in);
    if (!(bad && behavior.la.relay_to_puppet)) {
      auto r = la.la->la_forward_alp(alp, stamp());
      if (!r) {
        note(la.actor, "alp_rejected", in.id, to_string(r.reason()));
        abort(in, r.reason(), la.actor);
        return;
      }
    }
    if (bad && behavior.la.implicate_prover) {
      implicate(i, alp);
      return;
    }
    watch(in);
    send(ent(in.prover).actor, prover_extra(in), [this, i, alp](Micros at) { prover_on_alp(i, alp, at); });
  }

  // The LA keeps the proof and forges the prover's side of the exchange.
  void implicate(std::size_t i, const AssertedLocationProof& alp) {
    Instance& in = inst(i);
    Entity& la = ent(in.la);
    Entity& w = ent(in.witness);
    in.alp = alp;
    Verification v{Verdict::Yes, digest_of(alp), stamp()};
    VerificationResponse vr;
    if (witness_bad(in)) {
      vr = build_verification(w.identity, Verdict::Yes, v.h_alp, v.t_v);
    } else {
      vr.v = v;
      vr.sig = Signature{la.identity.secret.sign(signed_payload(vr)), w.identity.id};
    }
    AckAlp ack{Acknowledgement{alp, vr, alp.ar.astat.block_id, stamp()}, {}};
    ack.sig = Signature{la.identity.secret.sign(signed_payload(ack)), ent(in.prover).identity.id};
    charge(3 * sign_cost());
    note(la.actor, "forged_ack", in.id);
    ++in.progress;
    AckAlpFinal final = build_final(la.identity, ack);
    send(node(in.committer).actor, 0, [this, i, final](Micros) { commit_on_final(i, final); });
  }

  void prover_on_alp(std::size_t i, const AssertedLocationProof& alp, Micros at) {
    Instance& in = inst(i);
    Entity& p = ent(in.prover);
    if (in.verdict) return;
    in.alp_us = at;
    in.wall_alp = WallClock::now();
    in.alp = alp;
    in.proof_bytes = encode(alp).size();
    charge(verify_cost());
    VerificationRequest vreq{alp, stamp()};
    if (!(prover_bad(in) && in.puppet_used)) {
      auto r = in.agent->prover_verify(alp, stamp());
      if (!r) {
        abort(in, r.reason(), p.actor);
        return;
      }
      vreq = *r;
    }
    note(p.actor, "alp", in.id);
    watch(in);
    if (in.puppet_used) {
      send(puppet_actor, prover_extra(in), [this, i, vreq](Micros) { puppet_on_vreq(i, vreq); });
      return;
    }
    send(ent(in.witness).actor, prover_extra(in), [this, i, vreq](Micros) { witness_on_vreq(i, vreq); });
  }

  void witness_on_vreq(std::size_t i, const VerificationRequest& vreq) {
    Instance& in = inst(i);
    if (in.verdict) return;
    charge(sign_cost());
    VerificationResponse vr = ent(in.witness).witness->witness_answer(vreq, stamp());
    watch(in);
    send(ent(in.prover).actor, prover_extra(in), [this, i, vr](Micros) { prover_on_vr(i, vr); });
  }

  void puppet_on_vreq(std::size_t i, const VerificationRequest& vreq) {
    Instance& in = inst(i);
    if (in.verdict) return;
    charge(sign_cost());
    VerificationResponse vr = build_verification(*puppet, Verdict::Yes, digest_of(vreq.alp), stamp());
    watch(in);
    send(ent(in.prover).actor, prover_extra(in), [this, i, vr](Micros) { prover_on_vr(i, vr); });
  }

  void prover_on_vr(std::size_t i, const VerificationResponse& vr) {
    Instance& in = inst(i);
    Entity& p = ent(in.prover);
    if (in.verdict) return;
    charge(verify_cost() + sign_cost());
    AckAlp ack;
    if (prover_bad(in) && in.puppet_used) {
      ack = build_ack(p.identity, *in.alp, vr, stamp());
    } else {
      auto r = in.agent->prover_ack(*in.alp, vr, stamp());
      if (!r) {
        abort(in, r.reason(), p.actor);
        return;
      }
      ack = *r;
    }
    note(p.actor, "ack_alp", in.id);
    watch(in);
    send(ent(in.la).actor, prover_extra(in), [this, i, ack](Micros) { la_on_ack(i, ack); });
  }

  void la_on_ack(std::size_t i, const AckAlp& ack) {
    Instance& in = inst(i);
    Entity& la = ent(in.la);
    if (in.verdict) return;
    charge(verify_cost() + sign_cost());
    auto r = la.la->la_finalize(ack, stamp());
    if (!r) {
      abort(in, r.reason(), la.actor);
      return;
    }
    note(la.actor, "final", in.id);
    ++in.progress;
    AckAlpFinal final = *r;
    send(node(in.committer).actor, 0, [this, i, final](Micros) { commit_on_final(i, final); });
  }

  void commit_on_final(std::size_t i, const AckAlpFinal& final) {
    charge(verify_cost());
    note(node(inst(i).committer).actor, "commit", inst(i).id);
    broadcast([this, i, final](int n) { sn_on_proof(i, n, final); });
  }

  void sn_on_proof(std::size_t i, int n, const AckAlpFinal& final) {
    Instance& in = inst(i);
    Node& sn = node(n);
    charge(7 * verify_cost());
    Status s = sn.provenance.append_proof(final, sn.decisions, keys, ledger, stamp());
    note(sn.actor, s ? "proof_appended" : "proof_rejected", in.id, s ? "" : to_string(s.reason()));
    if (s) {
      const auto& astat = final.ack_alp.ack.alp.ar.astat;
      (void)sn.node->registry().record_participation(astat.witness);
      (void)sn.node->registry().record_participation(astat.la);
      ++in.appended;
    } else {
      ++in.rejected;
      if (!in.first_reject || (!in.reject_from_honest && !sn.compromised)) {
        in.first_reject = s.reason();
        in.reject_from_honest = !sn.compromised;
      }
    }
    const int total = static_cast<int>(nodes.size());
    if (2 * in.appended > total)
      terminate(in, RunVerdict::Committed, std::nullopt, sn.actor);
    else if (2 * in.rejected >= total)
      terminate(in, RunVerdict::RejectedAtLedger, in.first_reject, sn.actor);
  }

  // ---- evaluation

  BlockAcceptance acceptance() const {
    return BlockAcceptance{static_cast<int>(nodes.size()), [this](const Digest& id) {
                             auto it = accepted.find(id);
                             return it == accepted.end() ? 0 : it->second;
                           }};
  }

  void tamper(Instance& in, AssertedLocationProof& alp) const {
    if (in.id % 2 == 0)
      alp.areq.lp.lpreq.approval.preq.loc.x += 250.0;
    else
      alp.t_alp = alp.t_alp + 1;
  }

  Status check_forks() const {
    const Node* ref = nullptr;
    for (const auto& n : nodes) {
      if (n.compromised) continue;
      if (!ref) {
        ref = &n;
        continue;
      }
      auto head_id = [](const DecisionChain& c) { return c.head() ? c.head()->id : Digest{}; };
      auto last = [](const ProvenanceChain& c) { return c.size() ? c.records().back().digest : Digest{}; };
      if (n.decisions.size() != ref->decisions.size() || head_id(n.decisions) != head_id(ref->decisions))
        return fail(Reason::ForkDetected, "decision chains diverge at " + n.node->id().value.substr(0, 16));
      if (n.provenance.size() != ref->provenance.size() || last(n.provenance) != last(ref->provenance))
        return fail(Reason::ForkDetected, "provenance chains diverge at " + n.node->id().value.substr(0, 16));
    }
    return ok_status();
  }

  void evaluate() {
    const int h = honest_index();
    auto ms = [](WallClock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); };
    for (auto& in : instances) {
      if (!in.verdict) terminate(in, RunVerdict::AbortedInProtocol, Reason::StepTimeout, ent(in.prover).actor);
      ProtocolOutcome o;
      o.instance = in.id;
      o.prover = ent(in.prover).label;
      o.verdict = *in.verdict;
      o.reason = in.reason;
      o.attacked = in.attacked;
      if (in.arrival_us >= 0) o.arrival_ms = static_cast<double>(in.arrival_us) / 1000.0;
      if (in.arrival_us >= 0 && in.approval_us >= 0) {
        o.has_ddt = true;
        o.ddt_virtual_ms = static_cast<double>(in.approval_us - in.arrival_us) / 1000.0;
        if (config.wall_time) o.ddt_wall_ms = ms(in.wall_approval - in.wall_arrival);
      }
      if (in.created_us >= 0 && in.alp_us >= 0) {
        o.has_pgt = true;
        o.pgt_virtual_ms = static_cast<double>(in.alp_us - in.created_us) / 1000.0;
        if (config.wall_time) o.pgt_wall_ms = ms(in.wall_alp - in.wall_created);
      }
      o.proof_bytes = in.proof_bytes;
      o.block_bytes = in.block_bytes;
      if (in.alp) {
        AssertedLocationProof shown = *in.alp;
        if (prover_bad(in) && behavior.prover.tamper_proof) tamper(in, shown);
        in.presented = shown;
        o.presented = true;
        Node& n = node(h);
        Status s = verify_third_party(shown, n.decisions, n.provenance, keys, acceptance(), ledger);
        o.third_party_valid = s.ok();
        if (!s) o.detection_reason = s.reason();
      }
      outcomes.push_back(std::move(o));
    }
  }

  Result<std::vector<ProtocolOutcome>> run() {
    if (ran) return fail(Reason::InvalidConfig, "world already ran");
    ran = true;
    if (auto s = run_loop(); !s) return s.failure();
    evaluate();
    if (auto s = check_forks(); !s) return s.failure();
    return outcomes;
  }
};

World::World(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
World::~World() = default;
World::World(World&&) noexcept = default;
World& World::operator=(World&&) noexcept = default;

const ScenarioConfig& World::config() const { return impl_->config; }
const KeyDirectory& World::keys() const { return impl_->keys; }

std::vector<KeyListing> World::key_listing() const {
  std::vector<KeyListing> out;
  for (std::size_t i = 0; i < impl_->nodes.size(); ++i)
    out.push_back({impl_->actors[static_cast<std::size_t>(impl_->nodes[i].actor)].label, EntityRole::Supervisor,
                   impl_->nodes[i].node->id()});
  for (const auto& e : impl_->entities)
    out.push_back({e.label, e.role == WorkerRole::Mobile ? EntityRole::Mobile : EntityRole::LocationAuthority,
                   e.identity.id});
  return out;
}

int World::n_supervisors() const { return static_cast<int>(impl_->nodes.size()); }
bool World::compromised(int node) const { return impl_->nodes.at(static_cast<std::size_t>(node)).compromised; }
int World::honest_node() const { return impl_->honest_index(); }
const SupervisorNode& World::supervisor(int node) const { return *impl_->nodes.at(static_cast<std::size_t>(node)).node; }
const DecisionChain& World::decision_chain(int node) const {
  return impl_->nodes.at(static_cast<std::size_t>(node)).decisions;
}
const ProvenanceChain& World::provenance_chain(int node) const {
  return impl_->nodes.at(static_cast<std::size_t>(node)).provenance;
}
BlockAcceptance World::acceptance() const { return impl_->acceptance(); }
const std::vector<ProtocolOutcome>& World::outcomes() const { return impl_->outcomes; }

const AssertedLocationProof* World::presented_proof(std::uint64_t instance) const {
  if (instance >= impl_->instances.size()) return nullptr;
  const auto& p = impl_->instances[instance].presented;
  return p ? &*p : nullptr;
}

bool World::trace_enabled() const { return impl_->trace_on; }
void World::set_trace(bool enabled) { impl_->trace_on = enabled; }
const std::vector<std::string>& World::trace() const { return impl_->trace; }

void World::write_trace(std::ostream& os) const {
  for (const auto& line : impl_->trace) os << line << '\n';
}

Result<World> build_world(const ScenarioConfig& config) {
  if (auto s = config.validate(); !s) return s.failure();
  if (auto s = check_behavior(config.attack_case, config.behavior); !s) return s.failure();
  auto impl = std::make_unique<World::Impl>(config);
  try {
    impl->build();
  } catch (const Error& e) {
    return fail(e.reason(), e.what());
  }
  return World(std::move(impl));
}

Status inject_attack(World& world, const AdversaryBehavior& behavior) {
  auto& impl = world.impl();
  if (impl.ran) return fail(Reason::InvalidConfig, "cannot change behavior after the run");
  if (auto s = check_behavior(impl.config.attack_case, behavior); !s) return s;
  impl.behavior = behavior;
  impl.config.behavior = behavior;
  return ok_status();
}

Result<std::vector<ProtocolOutcome>> run(World& world) { return world.impl().run(); }

Result<std::vector<ProtocolOutcome>> run_scenario(const ScenarioConfig& config) {
  auto world = build_world(config);
  if (!world) return world.failure();
  return run(*world);
}

}  // namespace lpchain::sim
