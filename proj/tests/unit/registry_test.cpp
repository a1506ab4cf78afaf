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


#include <gtest/gtest.h>

#include <optional>
#include <random>
#include <sstream>

#include "lpchain/registry.hpp"

namespace lpchain {
namespace {

EntityId id(int i) { return EntityId("w" + std::to_string(1000 + i)); }

TEST(Registry, RegistrationAndDuplicates) {
  Registry reg;
  ASSERT_TRUE(reg.register_entity(id(1), WorkerRole::Mobile, {0, 0}, Timestamp{0}).ok());
  EXPECT_EQ(reg.register_entity(id(1), WorkerRole::Mobile, {0, 0}, Timestamp{0}).reason(), Reason::DuplicateEntity);
  EXPECT_EQ(reg.record_ping(id(2), {0, 0}, Timestamp{1}).reason(), Reason::UnknownEntity);
  EXPECT_EQ(reg.record_participation(id(2)).reason(), Reason::UnknownEntity);
  ASSERT_TRUE(reg.record_participation(id(1)).ok());
  EXPECT_EQ(reg.find(id(1))->requests_entertained, 2);
}

TEST(Registry, StaleMobilesAreEvictedAuthoritiesStay) {
  Registry reg(RegistryConfig{1000, 100, 1});
  ASSERT_TRUE(reg.register_entity(id(1), WorkerRole::Mobile, {0, 0}, Timestamp{0}).ok());
  ASSERT_TRUE(reg.register_entity(id(2), WorkerRole::Mobile, {0, 0}, Timestamp{0}).ok());
  ASSERT_TRUE(reg.register_entity(id(3), WorkerRole::LocationAuthority, {0, 0}, Timestamp{0}).ok());
  ASSERT_TRUE(reg.record_ping(id(2), {1, 1}, Timestamp{900}).ok());
  EXPECT_TRUE(reg.evict_stale(Timestamp{1000}).empty());
  auto gone = reg.evict_stale(Timestamp{1001});
  ASSERT_EQ(gone.size(), 1u);
  EXPECT_EQ(gone[0], id(1));
  EXPECT_FALSE(reg.contains(id(1)));
  EXPECT_TRUE(reg.contains(id(2)));
  EXPECT_TRUE(reg.evict_stale(Timestamp{1'000'000}).size() == 1);
  EXPECT_TRUE(reg.contains(id(3)));
  EXPECT_EQ(reg.size(), 1u);
}

TEST(Registry, SelectionExcludesProverAndRespectsRange) {
  Registry reg(RegistryConfig{60'000, 100, 1});
  ASSERT_TRUE(reg.register_entity(id(1), WorkerRole::Mobile, {0, 0}, Timestamp{0}).ok());
  ASSERT_TRUE(reg.register_entity(id(2), WorkerRole::LocationAuthority, {100, 0}, Timestamp{0}).ok());
  ASSERT_TRUE(reg.record_ping(id(1), {0, 0}, Timestamp{5000}).ok());
  EXPECT_EQ(reg.select_participants(id(1), {0, 0}, Timestamp{5000}).reason(), Reason::NoEligibleWitness);
  ASSERT_TRUE(reg.register_entity(id(3), WorkerRole::Mobile, {0, 0}, Timestamp{0}).ok());
  auto s = reg.select_participants(id(1), {0, 0}, Timestamp{5000});
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->witness, id(3));
  EXPECT_EQ(s->la, id(2));
  EXPECT_EQ(reg.select_participants(id(1), {-0.5, 0}, Timestamp{5000}).reason(), Reason::NoEligibleLA);
}

TEST(Registry, TiesGoToSmallestId) {
  Registry reg;
  for (int i : {5, 3, 4}) ASSERT_TRUE(reg.register_entity(id(i), WorkerRole::Mobile, {1, 0}, Timestamp{0}).ok());
  for (int i : {9, 7}) ASSERT_TRUE(reg.register_entity(id(i), WorkerRole::LocationAuthority, {0, 1}, Timestamp{0}).ok());
  auto s = reg.select_participants(EntityId("p"), {0, 0}, Timestamp{0});
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->witness, id(3));
  EXPECT_EQ(s->la, id(7));
}

// Brute force over records(): highest score, then smallest id.
std::optional<EntityId> oracle_best(const std::vector<WorkerRecord>& recs, WorkerRole role, const EntityId& prover,
                                    GeoPoint at, Timestamp now, const RegistryConfig& cfg) {
  std::optional<std::pair<double, EntityId>> best;
  for (const auto& r : recs) {
    if (r.role != role || r.id == prover) continue;
    if (role == WorkerRole::Mobile && now - r.last_ping > cfg.ping_timeout_ms) continue;
    double d = distance(r.loc, at);
    if (d > cfg.range_limit_m) continue;
    double score = static_cast<double>(r.requests_entertained) * r.uptime_seconds() / std::max(d, cfg.distance_floor_m);
    if (!best || score > best->first || (score == best->first && r.id < best->second)) best = {score, r.id};
  }
  if (!best) return std::nullopt;
  return best->second;
}

TEST(Registry, SelectionAgreesWithBruteForce) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> pos(0, 300);
  RegistryConfig cfg{20'000, 80, 1};
  for (int trial = 0; trial < 100; ++trial) {
    Registry reg(cfg);
    int n = 1 + static_cast<int>(rng() % 60);
    for (int i = 0; i < n; ++i) {
      WorkerRole role = rng() % 4 == 0 ? WorkerRole::LocationAuthority : WorkerRole::Mobile;
      GeoPoint at{std::round(pos(rng)), std::round(pos(rng))};
      ASSERT_TRUE(reg.register_entity(id(i), role, at, Timestamp{static_cast<std::int64_t>(rng() % 1000)}).ok());
      if (role == WorkerRole::Mobile) {
        Timestamp ping{1000 + static_cast<std::int64_t>(rng() % 30'000)};
        ASSERT_TRUE(reg.record_ping(id(i), at, ping).ok());
      }
      for (int b = static_cast<int>(rng() % 3); b > 0; --b) ASSERT_TRUE(reg.record_participation(id(i)).ok());
    }
    if (trial % 3 == 0) {
      reg.evict_stale(Timestamp{35'000});
    }
    GeoPoint at{pos(rng), pos(rng)};
    EntityId prover = id(static_cast<int>(rng() % static_cast<std::uint64_t>(n)));
    Timestamp now{35'000};
    auto recs = reg.records();
    auto w = oracle_best(recs, WorkerRole::Mobile, prover, at, now, cfg);
    auto la = oracle_best(recs, WorkerRole::LocationAuthority, prover, at, now, cfg);
    auto got = reg.select_participants(prover, at, now);
    if (!w) {
      EXPECT_EQ(got.reason(), Reason::NoEligibleWitness);
    } else if (!la) {
      EXPECT_EQ(got.reason(), Reason::NoEligibleLA);
    } else {
      ASSERT_TRUE(got.ok());
      EXPECT_EQ(got->witness, *w);
      EXPECT_EQ(got->la, *la);
    }
  }
}

TEST(Registry, JsonlDumpIsSortedById) {
  Registry reg;
  ASSERT_TRUE(reg.register_entity(id(2), WorkerRole::Mobile, {0, 0}, Timestamp{0}).ok());
  ASSERT_TRUE(reg.register_entity(id(1), WorkerRole::LocationAuthority, {0, 0}, Timestamp{0}).ok());
  std::ostringstream os;
  reg.dump_jsonl(os);
  std::string s = os.str();
  EXPECT_LT(s.find(id(1).value), s.find(id(2).value));
}

}  // namespace
}  // namespace lpchain
