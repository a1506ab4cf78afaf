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

#include <filesystem>
#include <random>

#include "lpchain/sim/scenario_io.hpp"
#include "mini_system.hpp"

namespace lpchain::sim {
namespace {

ScenarioConfig random_config(std::mt19937_64& rng) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  auto real = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  ScenarioConfig c;
  c.seed = rng();
  c.key_seed = rng() % 1000;
  c.n_supervisors = 1 + pick(30);
  c.k = 1 + pick(3);
  c.key_size = std::array{224, 256, 384, 521}[static_cast<std::size_t>(pick(4))];
  c.latency = LatencyModel{real(0, 2), real(2, 20), real(0, 2), real(2, 30)};
  c.cost = CostModel{real(1, 100), real(1, 200), real(0, 10)};
  c.range_limit_m = real(10, 300);
  c.warmup_ms = pick(100'000);
  c.attack_case = pick(9);
  c.compromised_supervisor_fraction = real(0, 1);
  c.allow_compromised_majority = pick(2) == 1;
  c.wall_time = pick(2) == 1;
  if (pick(2)) c.temporal_range_ms = pick(5000);
  if (pick(2)) c.response_delay_bound_ms = pick(500);
  c.behavior.prover.false_presence_m = real(0, 1000);
  c.behavior.prover.back_date_ms = pick(50'000);
  c.behavior.prover.tamper_proof = pick(2) == 1;
  c.behavior.witness.false_time_offset_ms = pick(1000) - 500;
  c.behavior.la.relay_to_puppet = pick(2) == 1;
  c.behavior.supervisor.attack = static_cast<SupervisorAttack>(pick(4));
  c.population = PopulationSpec{pick(1000), pick(50), real(1, 1000), real(0, 1), real(0, 1)};
  c.prover_generator = ProverGenerator{pick(10), 1 + pick(3), pick(10'000), pick(1000), std::nullopt, pick(2) == 1};
  if (pick(2)) c.prover_generator.rrsn = pick(5);
  for (int i = pick(4); i > 0; --i)
    c.workers.push_back(WorkerSpec{"w" + std::to_string(i), pick(2) ? WorkerRole::Mobile : WorkerRole::LocationAuthority,
                                   GeoPoint{real(-500, 500), real(-500, 500)}, pick(2) == 1});
  for (int i = pick(3); i > 0; --i) {
    ProverSpec p;
    p.name = "p" + std::to_string(i);
    if (pick(2)) p.position = GeoPoint{real(0, 100), 0.1 * pick(1000)};
    p.honest = pick(2) == 1;
    p.request_offsets_ms = {pick(100), 100 + pick(100)};
    if (pick(2)) p.rrsn = pick(5);
    c.provers.push_back(p);
  }
  return c;
}

TEST(ScenarioIo, DumpParsesBackToTheSameConfig) {
  ScenarioConfig defaults;
  EXPECT_EQ(parse_scenario(dump_scenario(defaults)).value(), defaults);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    ScenarioConfig c = random_config(rng);
    std::string text = dump_scenario(c);
    auto back = parse_scenario(text);
    ASSERT_TRUE(back.ok()) << back.failure().detail << "\n" << text;
    EXPECT_EQ(*back, c) << text;
    EXPECT_EQ(dump_scenario(*back), text);
    EXPECT_EQ(config_digest(*back), config_digest(c));
  }
}

TEST(ScenarioIo, PartialFilesKeepDefaults) {
  auto c = parse_scenario("seed: 9\nlatency: {p2p_max_ms: 4}\n").value();
  ScenarioConfig want;
  want.seed = 9;
  want.latency.p2p_max_ms = 4;
  EXPECT_EQ(c, want);
  EXPECT_EQ(parse_scenario("").value(), ScenarioConfig{});
}

TEST(ScenarioIo, RejectsUnknownKeysAndBadValues) {
  for (const char* text : {"sede: 1\n", "latency: {p2p_max: 3}\n", "behavior: {prover: {lie: true}}\n",
                           "seed: one\n", "wall_time: maybe\n", "workers: [{name: a, role: drone}]\n",
                           "workers: [{role: la}]\n", "behavior: {supervisor: {attack: bribe}}\n", "seed: [1\n",
                           "k: 1.5\n", "- 1\n"}) {
    auto r = parse_scenario(text);
    ASSERT_FALSE(r.ok()) << text;
    EXPECT_EQ(r.reason(), Reason::ParseError) << text;
  }
  EXPECT_EQ(load_scenario("/nonexistent/scenario.yaml").reason(), Reason::IoError);
}

TEST(ScenarioIo, DigestTracksEveryField) {
  ScenarioConfig a;
  ScenarioConfig b = a;
  b.cost.scan_us_per_worker = 5.5;
  EXPECT_NE(config_digest(a), config_digest(b));
  b = a;
  b.behavior.la.deny_service = true;
  EXPECT_NE(config_digest(a), config_digest(b));
}

TEST(ScenarioIo, ShippedScenariosAreValid) {
  int n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(LPCHAIN_SCENARIOS)) {
    std::string name = entry.path().filename().string();
    if (name.find("sweep") != std::string::npos) continue;
    auto c = load_scenario(entry.path());
    ASSERT_TRUE(c.ok()) << name << ": " << c.failure().detail;
    EXPECT_TRUE(c->validate().ok()) << name;
    ++n;
  }
  EXPECT_GE(n, 3);
}

TEST(ScenarioConfig, DerivedBounds) {
  ScenarioConfig c;
  EXPECT_EQ(c.compromised_count(), 0);
  c.compromised_supervisor_fraction = 0.4;
  EXPECT_EQ(c.compromised_count(), 6);
  c.compromised_supervisor_fraction = 1.0 / 3.0;
  EXPECT_EQ(c.compromised_count(), 5);
  EXPECT_EQ(c.effective_temporal_range_ms(), 2 * (10 + 150) + 20);
  EXPECT_EQ(c.effective_response_delay_bound_ms(), 30);
  c.temporal_range_ms = 700;
  EXPECT_EQ(c.ledger().temporal_range_ms, 700);
  EXPECT_EQ(c.service().temporal_range_ms, 700);
  EXPECT_EQ(c.cost.sign_us(224), 60);
  EXPECT_EQ(c.cost.verify_us(448), 480);
}

}  // namespace
}  // namespace lpchain::sim
