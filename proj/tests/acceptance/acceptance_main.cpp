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

// Acceptance gate. Prints one PASS/FAIL line per criterion; tolerances are
// pinned below. Exits non-zero when any criterion fails, except the ones in
// kKnownInfeasible, which still print FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lpchain/bench.hpp"
#include "lpchain/consensus.hpp"
#include "lpchain/ledger.hpp"
#include "lpchain/registry.hpp"
#include "lpchain/sim/adversary.hpp"
#include "lpchain/sim/world.hpp"

using namespace lpchain;
using namespace lpchain::sim;

namespace {

// ---- pinned tolerances
constexpr int kCollusionSeeds = 200;
constexpr double kCollusionBudgetS = 120.0;
constexpr int kBoundarySeeds = 50;
constexpr double kBoundaryFraction = 0.6;
constexpr int kSampledInterleavings = 10'000;
constexpr int kMutations = 1'000;
constexpr double kBlockMinKB = 6.8;
constexpr double kProofMinKB = 4.7;
constexpr double kSizeSlack = 1.5;  // +50%
constexpr double kKB = 1000.0;
constexpr double kDdtBoundMs = 200.0;
constexpr double kPgtBoundMs = 1000.0;
constexpr int kTimingSeeds = 5;
constexpr int kShapeSeeds = 5;
constexpr int kConcurrencySeeds = 10;
constexpr int kRandomScenarios = 1'000;
constexpr int kSelectionRegistries = 500;

const std::set<std::string> kKnownInfeasible = {"C5c"};

struct Line {
  std::string id;
  bool pass;
  std::string text;
};

std::vector<Line> lines;

void emit(const std::string& id, bool pass, const std::string& text) {
  lines.push_back({id, pass, text});
  std::printf("[%s] %s %s\n", pass ? "PASS" : "FAIL", id.c_str(), text.c_str());
  std::fflush(stdout);
}

template <class... A>
std::string fmt(const char* f, A... a) {
  char buf[1024];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Spearman rank correlation with average ranks for ties.
std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto rx = ranks(x), ry = ranks(y);
  double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / static_cast<double>(rx.size());
  double my = std::accumulate(ry.begin(), ry.end(), 0.0) / static_cast<double>(ry.size());
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxx == 0 || syy == 0 ? 0.0 : sxy / std::sqrt(sxx * syy);
}

// ---- criterion 1
void collusion_matrix() {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> problems;
  int fake_valid = 0, attacked_total = 0;
  std::string per_case;
  for (int c = 1; c <= kCaseCount; ++c) {
    int committed = 0, total = 0, attacked = 0, wrong_reason = 0, errors = 0;
    auto expected = expected_reasons(c);
    for (int s = 0; s < kCollusionSeeds; ++s) {
      int variant = s % case_variants(c);
      auto out = run_scenario(case_scenario(c, variant, 1000 + static_cast<std::uint64_t>(s)));
      if (!out) {
        ++errors;
        problems.push_back(fmt("case %d seed %d: %s", c, s, std::string(to_string(out.reason())).c_str()));
        continue;
      }
      for (const auto& o : *out) {
        ++total;
        if (o.verdict == RunVerdict::Committed) ++committed;
        if (c == 1 || !o.attacked) continue;
        ++attacked;
        if (o.fake_accepted()) ++fake_valid;
        auto r = o.verdict == RunVerdict::Committed ? o.detection_reason : o.reason;
        if (!r || std::find(expected.begin(), expected.end(), *r) == expected.end()) {
          ++wrong_reason;
          if (problems.size() < 5)
            problems.push_back(fmt("case %d seed %d: reason %s", c, s, r ? std::string(to_string(*r)).c_str() : "none"));
        }
      }
    }
    attacked_total += attacked;
    if (c == 1 && committed != total) problems.push_back(fmt("case 1: %d/%d committed", committed, total));
    if (c > 1 && attacked == 0) problems.push_back(fmt("case %d: no attacked instance", c));
    if (wrong_reason) problems.push_back(fmt("case %d: %d unexpected reasons", c, wrong_reason));
    per_case += fmt(" c%d=%d/%d", c, c == 1 ? committed : attacked, total);
  }
  double secs = seconds_since(t0);
  bool pass = problems.empty() && fake_valid == 0 && secs < kCollusionBudgetS;
  std::string text = fmt("collusion matrix: fake valid=%d over %d attacked instances, %.1fs;", fake_valid,
                         attacked_total, secs) +
                     per_case;
  if (!problems.empty()) text += " first problem: " + problems.front();
  emit("C1", pass, text);
}

// ---- criterion 2
void assumption_boundary() {
  int fakes = 0, errors = 0;
  for (int s = 0; s < kBoundarySeeds; ++s) {
    // Variant 2 of case 8: compromised nodes echo the accomplice pair.
    ScenarioConfig c = case_scenario(8, 2, 5000 + static_cast<std::uint64_t>(s));
    c.compromised_supervisor_fraction = kBoundaryFraction;
    c.allow_compromised_majority = true;
    auto out = run_scenario(c);
    if (!out) {
      ++errors;
      continue;
    }
    for (const auto& o : *out)
      if (o.fake_accepted() && o.verdict == RunVerdict::Committed) ++fakes;
  }
  emit("C2", fakes >= 1 && errors == 0,
       fmt("assumption boundary: %d/%d seeds commit a fake proof at compromised fraction %.2f (errors %d)", fakes,
           kBoundarySeeds, kBoundaryFraction, errors));
}

// ---- criterion 3
struct Rig {
  KeyDirectory keys;
  std::vector<Identity> sns;
  BroadcastRequest req;
  Selection a{EntityId("aa"), EntityId("la-a")};
  Selection b{EntityId("bb"), EntityId("la-b")};
  std::vector<DecisionAck> ack_a, ack_b;

  explicit Rig(int n) {
    for (int i = 0; i < n; ++i) {
      auto id = make_identity(90'000 + static_cast<std::uint64_t>(i), 224);
      (void)keys.add(id->id, EntityRole::Supervisor, id->pub);
      sns.push_back(*id);
    }
    auto prover = make_identity(99'999, 224);
    (void)keys.add(prover->id, EntityRole::Mobile, prover->pub);
    ProofRequest preq{prover->id, Timestamp{1000}, GeoPoint{1, 2}, {}};
    preq.sig = prover->sign(signed_payload(preq));
    req = make_broadcast(sns[0], preq, Timestamp{1001});
    for (const auto& s : sns) {
      ack_a.push_back(make_decision_ack(s, req, a, Timestamp{1002}));
      ack_b.push_back(make_decision_ack(s, req, b, Timestamp{1002}));
    }
  }
};

// Returns the 1-based arrival index at which consensus finalized, or 0.
int feed(const Rig& rig, int threshold, const std::vector<int>& order, unsigned choice_bits) {
  PendingConsensus pc(rig.req, threshold);
  for (std::size_t i = 0; i < order.size(); ++i) {
    int sn = order[i];
    const auto& ack = (choice_bits >> sn) & 1U ? rig.ack_b[static_cast<std::size_t>(sn)] : rig.ack_a[static_cast<std::size_t>(sn)];
    auto r = pc.accumulate(ack, rig.keys);
    if (r.ok() && *r) return static_cast<int>(i) + 1;
  }
  return 0;
}

// Independent oracle: walk the arrivals and count per pair.
int oracle(int n, int threshold, const std::vector<int>& order, unsigned choice_bits) {
  int ca = 0, cb = 0;
  for (int i = 0; i < n; ++i) {
    int sn = order[static_cast<std::size_t>(i)];
    int& c = (choice_bits >> sn) & 1U ? cb : ca;
    if (++c >= threshold) return i + 1;
  }
  return 0;
}

void threshold_soundness() {
  std::mt19937_64 rng(3);
  long checked = 0, mismatches = 0;
  for (int n : {1, 3, 5, 7}) {
    Rig rig(n);
    int threshold = n / 2 + 1;
    std::vector<int> base(static_cast<std::size_t>(n));
    std::iota(base.begin(), base.end(), 0);
    auto check = [&](const std::vector<int>& order, unsigned bits) {
      int got = feed(rig, threshold, order, bits);
      int want = oracle(n, threshold, order, bits);
      // Finalization happens iff some pair holds a majority of all acks.
      int ones = __builtin_popcount(bits);
      bool majority = std::max(ones, n - ones) >= threshold;
      ++checked;
      if (got != want || (got != 0) != majority) ++mismatches;
    };
    if (n < 7) {
      for (unsigned bits = 0; bits < (1U << n); ++bits) {
        auto order = base;
        do check(order, bits);
        while (std::next_permutation(order.begin(), order.end()));
      }
    } else {
      for (int s = 0; s < kSampledInterleavings; ++s) {
        auto order = base;
        std::shuffle(order.begin(), order.end(), rng);
        check(order, static_cast<unsigned>(rng() & ((1U << n) - 1)));
      }
    }
  }
  Rig big(15);
  std::vector<int> order(15);
  std::iota(order.begin(), order.end(), 0);
  int at = feed(big, ConsensusConfig{}.threshold(), order, 0);
  emit("C3", mismatches == 0 && at == 8,
       fmt("threshold soundness: %ld interleavings, %ld mismatches; N=15 finalizes at ack %d", checked, mismatches,
           at));
}

// ---- criterion 4
void tamper_evidence() {
  ScenarioConfig c = case_scenario(1, 0, 77);
  c.prover_generator.count = 6;
  c.prover_generator.requests_each = 2;
  auto world = build_world(c);
  if (!world || !run(*world)) {
    emit("C4", false, "tamper evidence: scenario failed");
    return;
  }
  int h = world->honest_node();
  std::vector<std::vector<Bytes>> chains = {world->decision_chain(h).entries(), world->provenance_chain(h).entries()};
  std::mt19937_64 rng(11);
  int chain_detected = 0;
  for (int m = 0; m < kMutations; ++m) {
    auto entries = chains[static_cast<std::size_t>(m % 2)];
    auto& e = entries[rng() % entries.size()];
    e[rng() % e.size()] ^= static_cast<std::uint8_t>(1 + rng() % 255);
    if (audit_chain(entries)) ++chain_detected;
  }
  std::vector<Bytes> proofs;
  for (const auto& o : world->outcomes())
    if (auto* p = world->presented_proof(o.instance)) proofs.push_back(encode(*p));
  int proof_rejected = 0, baseline_valid = 0;
  for (const auto& p : proofs)
    if (verify_third_party(decode<AssertedLocationProof>(p), world->decision_chain(h), world->provenance_chain(h),
                           world->keys(), world->acceptance(), c.ledger()))
      ++baseline_valid;
  for (int m = 0; m < kMutations; ++m) {
    Bytes p = proofs[rng() % proofs.size()];
    p[rng() % p.size()] ^= static_cast<std::uint8_t>(1 + rng() % 255);
    try {
      auto alp = decode<AssertedLocationProof>(p);
      if (!verify_third_party(alp, world->decision_chain(h), world->provenance_chain(h), world->keys(),
                              world->acceptance(), c.ledger()))
        ++proof_rejected;
    } catch (const std::exception&) {
      ++proof_rejected;
    }
  }
  bool pass = chain_detected == kMutations && proof_rejected == kMutations &&
              baseline_valid == static_cast<int>(proofs.size()) && !proofs.empty();
  emit("C4", pass,
       fmt("tamper evidence: chain mutations detected %d/%d, proof mutations rejected %d/%d (unmutated valid %d/%zu)",
           chain_detected, kMutations, proof_rejected, kMutations, baseline_valid, proofs.size()));
}

// ---- criterion 5
struct Sizes {
  std::int64_t proof = 0, block = 0;
};

Sizes sizes_for(ScenarioConfig c) {
  c.prover_generator.count = 1;
  auto out = run_scenario(c);
  Sizes s;
  if (!out) return s;
  for (const auto& o : *out) {
    s.proof = std::max<std::int64_t>(s.proof, static_cast<std::int64_t>(o.proof_bytes));
    s.block = std::max<std::int64_t>(s.block, static_cast<std::int64_t>(o.block_bytes));
  }
  return s;
}

ScenarioConfig baseline(std::uint64_t seed) {
  ScenarioConfig c;
  c.seed = seed;
  c.population = PopulationSpec{375, 25, 500.0, 0, 0};
  c.warmup_ms = 30'000;
  return c;
}

ScenarioConfig with_workers(ScenarioConfig c, int workers) {
  int las = std::max(1, static_cast<int>(std::lround(workers / 16.0)));
  c.population.location_authorities = las;
  c.population.mobiles = workers - las;
  return c;
}

void size_properties() {
  std::vector<Sizes> by_workers;
  for (int w : {100, 400, 800, 1600}) by_workers.push_back(sizes_for(with_workers(baseline(21), w)));
  bool workers_const = std::all_of(by_workers.begin(), by_workers.end(), [&](const Sizes& s) {
    return s.proof == by_workers[0].proof && s.block == by_workers[0].block && s.proof > 0;
  });

  std::vector<Sizes> by_k;
  for (int k = 1; k <= 5; ++k) {
    auto c = baseline(22);
    c.k = k;
    by_k.push_back(sizes_for(c));
  }
  bool k_ok = by_k[0].proof > 0;
  for (std::size_t i = 1; i < by_k.size(); ++i)
    k_ok = k_ok && by_k[i].proof == by_k[0].proof && by_k[i].block >= by_k[i - 1].block;

  std::vector<int> key_sizes = {224, 256, 384, 521};
  std::vector<Sizes> by_key;
  for (int b : key_sizes) {
    auto c = baseline(23);
    c.key_size = b;
    by_key.push_back(sizes_for(c));
  }
  const std::int64_t threshold = ConsensusConfig{}.threshold();
  bool key_ok = by_key[0].proof > 0;
  for (std::size_t i = 1; i < by_key.size(); ++i) {
    auto growth = static_cast<std::int64_t>(signature_size(*key_level_from_bits(key_sizes[i])) -
                                            signature_size(*key_level_from_bits(key_sizes[i - 1])));
    key_ok = key_ok && by_key[i].proof > by_key[i - 1].proof && by_key[i].block - by_key[i - 1].block >= threshold * growth;
  }
  emit("C5a", workers_const && k_ok && key_ok,
       fmt("size shapes: workers const=%d (proof %lld, block %lld); K 1..5 proof const, block %lld..%lld ok=%d; "
           "key 224..521 proof %lld..%lld, block %lld..%lld ok=%d",
           workers_const, static_cast<long long>(by_workers[0].proof), static_cast<long long>(by_workers[0].block),
           static_cast<long long>(by_k.front().block), static_cast<long long>(by_k.back().block), k_ok,
           static_cast<long long>(by_key.front().proof), static_cast<long long>(by_key.back().proof),
           static_cast<long long>(by_key.front().block), static_cast<long long>(by_key.back().block), key_ok));

  Sizes base = by_workers[1];  // N=15, threshold 8, key 224, 400 workers
  double block_kb = static_cast<double>(base.block) / kKB;
  double proof_kb = static_cast<double>(base.proof) / kKB;
  emit("C5b", block_kb >= kBlockMinKB && block_kb <= kBlockMinKB * kSizeSlack,
       fmt("decision block size %.3f KB, target [%.2f, %.2f] KB", block_kb, kBlockMinKB, kBlockMinKB * kSizeSlack));
  emit("C5c", proof_kb >= kProofMinKB && proof_kb <= kProofMinKB * kSizeSlack,
       fmt("proof size %.3f KB, target [%.2f, %.2f] KB", proof_kb, kProofMinKB, kProofMinKB * kSizeSlack));
}

// ---- criterion 6
double mean_ddt(const ScenarioConfig& c) {
  auto out = run_scenario(c);
  if (!out) return -1;
  double sum = 0;
  int n = 0;
  for (const auto& o : *out)
    if (o.has_ddt) {
      sum += o.ddt_virtual_ms;
      ++n;
    }
  return n ? sum / n : -1;
}

void timing_bounds() {
  double worst_ddt = 0, worst_pgt = 0, worst_vddt = 0, worst_vpgt = 0;
  int measured = 0;
  for (int s = 0; s < kTimingSeeds; ++s) {
    auto c = baseline(600 + static_cast<std::uint64_t>(s));
    c.wall_time = true;
    c.prover_generator.count = 4;
    auto out = run_scenario(c);
    if (!out) continue;
    for (const auto& o : *out) {
      if (!o.has_ddt || !o.has_pgt) continue;
      ++measured;
      worst_ddt = std::max(worst_ddt, o.ddt_wall_ms);
      worst_pgt = std::max(worst_pgt, o.pgt_wall_ms);
      worst_vddt = std::max(worst_vddt, o.ddt_virtual_ms);
      worst_vpgt = std::max(worst_vpgt, o.pgt_virtual_ms);
    }
  }
  bool bounds = measured == 4 * kTimingSeeds && worst_ddt <= kDdtBoundMs && worst_pgt <= kPgtBoundMs &&
                worst_vddt <= kDdtBoundMs && worst_vpgt <= kPgtBoundMs;

  auto shape = [&](std::vector<double> xs, const std::function<ScenarioConfig(double, int)>& make) {
    std::vector<double> ys;
    for (double x : xs) {
      double sum = 0;
      for (int s = 0; s < kShapeSeeds; ++s) sum += mean_ddt(make(x, s));
      ys.push_back(sum / kShapeSeeds);
    }
    return spearman(xs, ys);
  };
  double rho_w = shape({100, 400, 800, 1600}, [](double w, int s) {
    return with_workers(baseline(700 + static_cast<std::uint64_t>(s)), static_cast<int>(w));
  });
  double rho_k = shape({1, 2, 3, 4, 5}, [](double k, int s) {
    auto c = baseline(800 + static_cast<std::uint64_t>(s));
    c.k = static_cast<int>(k);
    return c;
  });
  double rho_b = shape({224, 256, 384, 521}, [](double b, int s) {
    auto c = baseline(900 + static_cast<std::uint64_t>(s));
    c.key_size = static_cast<int>(b);
    return c;
  });
  emit("C6", bounds && rho_w > 0 && rho_k > 0 && rho_b > 0,
       fmt("timing: worst wall DDT %.2f ms, PGT %.2f ms; worst virtual DDT %.2f ms, PGT %.2f ms (%d instances); "
           "DDT rank correlation workers %.2f, K %.2f, key %.2f",
           worst_ddt, worst_pgt, worst_vddt, worst_vpgt, measured, rho_w, rho_k, rho_b));
}

// ---- criterion 7
void concurrency() {
  bench::SweepSpec spec;
  spec.variable = bench::SweepVariable::ConcurrentRequests;
  spec.values = {5, 25, 50, 100};
  spec.repetitions = kConcurrencySeeds;
  spec.base = with_workers(baseline(1300), 1600);
  auto rows = bench::run_sweep(spec);
  std::vector<double> xs, ys;
  bool complete = true;
  std::string text = "concurrency: mean DDT";
  for (const auto& r : rows) {
    xs.push_back(static_cast<double>(r.sweep_value));
    ys.push_back(r.ddt_virtual_mean_ms);
    complete = complete && r.error.empty() && r.committed == r.runs;
    text += fmt(" n=%lld:%.2fms(interval %.0fms)", static_cast<long long>(r.sweep_value), r.ddt_virtual_mean_ms,
                r.request_interval_ms);
  }
  double rho = spearman(xs, ys);
  emit("C7", complete && rho == 1.0, text + fmt("; rank correlation %.2f", rho));
}

// ---- criterion 8
void termination() {
  std::mt19937_64 rng(8);
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int instances = 0, terminal = 0, nonterm = 0, other = 0;
  std::string first;
  for (int i = 0; i < kRandomScenarios; ++i) {
    int attack = pick(1, kCaseCount);
    ScenarioConfig c = case_scenario(attack, pick(0, case_variants(attack) - 1), rng());
    c.n_supervisors = pick(1, 9);
    c.k = 1;
    c.population = PopulationSpec{pick(2, 25), pick(1, 6), uni(100, 400), uni(0, 0.6), uni(0, 0.6)};
    c.latency = LatencyModel{uni(0, 5), uni(5, 60), uni(0, 5), uni(5, 60)};
    c.compromised_supervisor_fraction = attack == 8 ? uni(0, 0.5) : 0.0;
    c.prover_generator.count = pick(1, 4);
    c.prover_generator.concurrent_window_ms = pick(0, 1) ? pick(1, 500) : 0;
    c.prover_generator.rrsn.reset();
    c.event_budget = 2'000'000;
    auto out = run_scenario(c);
    int expected = c.prover_generator.count * c.prover_generator.requests_each;
    instances += expected;
    if (!out) {
      if (out.reason() == Reason::NonTermination)
        ++nonterm;
      else
        ++other;
      if (first.empty()) first = fmt("scenario %d: %s %s", i, std::string(to_string(out.reason())).c_str(), out.failure().detail.c_str());
      continue;
    }
    terminal += static_cast<int>(out->size());
  }
  emit("C8", nonterm == 0 && other == 0 && terminal == instances,
       fmt("termination: %d/%d instances terminal over %d scenarios, NonTermination %d, other errors %d%s%s", terminal,
           instances, kRandomScenarios, nonterm, other, first.empty() ? "" : "; ", first.c_str()));
}

// ---- criterion 9
void determinism() {
  auto once = [](const ScenarioConfig& c) {
    auto world = build_world(c);
    if (!world) return std::string("error");
    auto out = run(*world);
    if (!out) return std::string("error");
    std::ostringstream os;
    bench::write_outcomes(os, *out, bench::Format::JsonLines, false);
    world->write_trace(os);
    return os.str();
  };
  int identical = 0, total = 0;
  for (int a : {1, 3, 5, 7, 8}) {
    auto c = case_scenario(a, 0, 4242);
    c.prover_generator.count = 3;
    ++total;
    auto x = once(c), y = once(c);
    if (x == y && x != "error") ++identical;
  }
  bench::SweepSpec spec;
  spec.variable = bench::SweepVariable::ConsensusK;
  spec.values = {1, 2};
  spec.repetitions = 2;
  spec.base = baseline(99);
  std::ostringstream r1, r2;
  bench::write_rows(r1, bench::run_sweep(spec), bench::Format::Csv);
  bench::write_rows(r2, bench::run_sweep(spec), bench::Format::Csv);
  ++total;
  if (r1.str() == r2.str()) ++identical;
  emit("C9", identical == total, fmt("determinism: %d/%d re-runs byte-identical (outcomes, traces, sweep rows)",
                                     identical, total));
}

// ---- criterion 10
void selection_oracle() {
  std::mt19937_64 rng(10);
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  int agree = 0;
  for (int t = 0; t < kSelectionRegistries; ++t) {
    RegistryConfig cfg{60'000, uni(20, 150), 1.0};
    Registry reg(cfg);
    struct W {
      EntityId id;
      WorkerRole role;
      GeoPoint loc;
      std::int64_t first, last, req;
    };
    std::vector<W> ws;
    int n = static_cast<int>(rng() % 21);
    const std::int64_t now = 500'000;
    bool coarse = rng() % 2;  // grid positions force exact score ties
    for (int i = 0; i < n; ++i) {
      W w;
      w.id = EntityId(fmt("w%02d-%llx", static_cast<int>(rng() % 30), static_cast<unsigned long long>(rng() % 4096)));
      if (std::any_of(ws.begin(), ws.end(), [&](const W& o) { return o.id == w.id; })) continue;
      w.role = rng() % 3 == 0 ? WorkerRole::LocationAuthority : WorkerRole::Mobile;
      w.loc = coarse ? GeoPoint{static_cast<double>(rng() % 5) * 20, static_cast<double>(rng() % 5) * 20}
                     : GeoPoint{uni(0, 200), uni(0, 200)};
      w.first = coarse ? 100'000 : static_cast<std::int64_t>(rng() % 400'000);
      w.last = coarse ? 400'000 + static_cast<std::int64_t>(rng() % 2) * 30'000 : w.first + static_cast<std::int64_t>(rng() % 100'000);
      if (rng() % 5 == 0) w.last = w.first;  // stale unless an LA
      w.req = 1 + static_cast<std::int64_t>(rng() % 3);
      (void)reg.register_entity(w.id, w.role, w.loc, Timestamp{w.first});
      (void)reg.record_ping(w.id, w.loc, Timestamp{w.last});
      for (std::int64_t r = 1; r < w.req; ++r) (void)reg.record_participation(w.id);
      ws.push_back(w);
    }
    EntityId prover = ws.empty() || rng() % 2 ? EntityId("prover") : ws[rng() % ws.size()].id;
    GeoPoint at = coarse ? GeoPoint{40, 40} : GeoPoint{uni(0, 200), uni(0, 200)};

    auto brute = [&](WorkerRole role) -> std::optional<EntityId> {
      std::optional<std::pair<double, EntityId>> best;
      for (const auto& w : ws) {
        if (w.role != role || w.id == prover) continue;
        if (role == WorkerRole::Mobile && now - w.last > cfg.ping_timeout_ms) continue;
        double dx = w.loc.x - at.x, dy = w.loc.y - at.y;
        double d = std::sqrt(dx * dx + dy * dy);
        if (d > cfg.range_limit_m) continue;
        double score = static_cast<double>(w.req) * (static_cast<double>(w.last - w.first) / 1000.0) /
                       std::max(d, cfg.distance_floor_m);
        if (!best || score > best->first || (score == best->first && w.id < best->second)) best = {score, w.id};
      }
      if (!best) return std::nullopt;
      return best->second;
    };
    auto bw = brute(WorkerRole::Mobile);
    auto bl = brute(WorkerRole::LocationAuthority);
    auto got = reg.select_participants(prover, at, Timestamp{now});
    bool same;
    if (!bw)
      same = !got && got.reason() == Reason::NoEligibleWitness;
    else if (!bl)
      same = !got && got.reason() == Reason::NoEligibleLA;
    else
      same = got && got->witness == *bw && got->la == *bl;
    if (same) ++agree;
  }
  emit("C10", agree == kSelectionRegistries,
       fmt("selection oracle: %d/%d registries agree with brute force", agree, kSelectionRegistries));
}

}  // namespace

int main() {
  collusion_matrix();
  assumption_boundary();
  threshold_soundness();
  tamper_evidence();
  size_properties();
  timing_bounds();
  concurrency();
  termination();
  determinism();
  selection_oracle();

  int failed = 0, waived = 0;
  for (const auto& l : lines) {
    if (l.pass) continue;
    if (kKnownInfeasible.count(l.id))
      ++waived;
    else
      ++failed;
  }
  std::printf("summary: %zu criteria lines, %d failed, %d known infeasible\n", lines.size(), failed + waived, waived);
  return failed == 0 ? 0 : 1;
}
