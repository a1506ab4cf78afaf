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

#include <random>
#include <sstream>

#include "lpchain/bench.hpp"
#include "mini_system.hpp"

namespace lpchain::bench {
namespace {

MetricRow random_row(std::mt19937_64& rng) {
  auto real = [&] { return std::uniform_real_distribution<double>(0, 1e4)(rng) / 7.0; };
  MetricRow r;
  r.sweep_variable = "worker_count";
  r.sweep_value = static_cast<std::int64_t>(rng() % 5000);
  r.seed = rng();
  r.config_digest = to_hex(digest(to_bytes(std::to_string(rng()))).view());
  r.runs = static_cast<std::int64_t>(rng() % 100);
  r.committed = r.runs / 2;
  r.rejected = r.runs / 3;
  r.aborted = r.runs - r.committed - r.rejected;
  r.ddt_virtual_mean_ms = real();
  r.ddt_virtual_min_ms = real();
  r.ddt_virtual_max_ms = real();
  r.ddt_wall_mean_ms = real();
  r.ddt_wall_min_ms = 0.1;
  r.ddt_wall_max_ms = 1e-9;
  r.pgt_virtual_mean_ms = real();
  r.pgt_wall_mean_ms = 0;
  r.proof_bytes = 1758;
  r.block_bytes = 10124;
  r.request_interval_ms = real();
  switch (rng() % 4) {
    case 0: r.error = ""; break;
    case 1: r.error = "ForkDetected: chains diverge, at 3"; break;
    case 2: r.error = "quoted \"value\"\nsecond line"; break;
    default: r.error = "plain"; break;
  }
  return r;
}

TEST(Bench, RowsRoundTripInBothFormats) {
  std::mt19937_64 rng(4);
  std::vector<MetricRow> rows;
  for (int i = 0; i < 50; ++i) rows.push_back(random_row(rng));
  for (Format f : {Format::Csv, Format::JsonLines}) {
    std::ostringstream out;
    write_rows(out, rows, f);
    std::istringstream in(out.str());
    auto back = read_rows(in, f);
    ASSERT_TRUE(back.ok()) << back.failure().detail;
    EXPECT_EQ(*back, rows);
    std::ostringstream again;
    write_rows(again, *back, f);
    EXPECT_EQ(again.str(), out.str());
  }
}

TEST(Bench, CsvHeaderListsTheColumns) {
  std::ostringstream out;
  write_rows(out, {}, Format::Csv);
  std::string header;
  for (auto c : metric_columns()) header += (header.empty() ? "" : ",") + std::string(c);
  EXPECT_EQ(out.str(), header + "\n");
  EXPECT_EQ(metric_columns().front(), "sweep_variable");
  EXPECT_EQ(metric_columns().back(), "error");
}

TEST(Bench, MalformedInputIsReported) {
  std::istringstream wrong_header("a,b\n1,2\n");
  EXPECT_FALSE(read_rows(wrong_header, Format::Csv).ok());
  std::istringstream bad_json("{\"sweep_variable\": 3}\n");
  EXPECT_FALSE(read_rows(bad_json, Format::JsonLines).ok());
  EXPECT_EQ(format_from("xml").reason(), Reason::ParseError);
  EXPECT_EQ(*format_from("jsonl"), Format::JsonLines);
  EXPECT_EQ(*format_from("csv"), Format::Csv);
}

TEST(Bench, RequestWindowInterpolatesLinearly) {
  EXPECT_DOUBLE_EQ(request_window_ms(5), 28.0);
  EXPECT_DOUBLE_EQ(request_window_ms(100), 920.0);
  EXPECT_DOUBLE_EQ(request_window_ms(50), 28.0 + 45.0 * 892.0 / 95.0);
}

TEST(Bench, PointConfigs) {
  SweepSpec spec;
  spec.base.seed = 100;
  spec.variable = SweepVariable::WorkerCount;
  auto w = point_config(spec, 400, 2);
  EXPECT_EQ(w.seed, 102u);
  EXPECT_EQ(w.population.location_authorities, 25);
  EXPECT_EQ(w.population.mobiles, 375);
  EXPECT_EQ(point_config(spec, 10, 0).population.location_authorities, 1);

  spec.variable = SweepVariable::ConcurrentRequests;
  auto c = point_config(spec, 25, 0);
  EXPECT_EQ(c.prover_generator.count, 25);
  EXPECT_EQ(c.prover_generator.concurrent_window_ms, std::llround(request_window_ms(25)));
  EXPECT_EQ(c.prover_generator.rrsn, 0);

  spec.variable = SweepVariable::KeySize;
  EXPECT_EQ(point_config(spec, 384, 0).key_size, 384);
  spec.variable = SweepVariable::ConsensusK;
  EXPECT_EQ(point_config(spec, 3, 0).k, 3);
}

TEST(Bench, SummaryMatchesHandComputation) {
  sim::ScenarioConfig cfg;
  std::vector<sim::ProtocolOutcome> run1(3), run2(2);
  double ddts[] = {10, 20, 30, 40};
  run1[0].verdict = sim::RunVerdict::Committed;
  run1[1].verdict = sim::RunVerdict::RejectedAtLedger;
  run1[2].verdict = sim::RunVerdict::ConsensusFailed;
  run2[0].verdict = sim::RunVerdict::Committed;
  run2[1].verdict = sim::RunVerdict::AbortedInProtocol;
  std::vector<sim::ProtocolOutcome*> with_ddt{&run1[0], &run1[1], &run2[0], &run2[1]};
  for (std::size_t i = 0; i < with_ddt.size(); ++i) {
    with_ddt[i]->has_ddt = true;
    with_ddt[i]->ddt_virtual_ms = ddts[i];
  }
  run1[0].arrival_ms = 5;
  run1[1].arrival_ms = 9;
  run2[0].arrival_ms = 100;
  run2[1].arrival_ms = 103;
  run1[0].proof_bytes = 1700;
  run2[0].proof_bytes = 1758;
  MetricRow r = summarize("key_size", 224, cfg, {run1, run2});
  EXPECT_EQ(r.runs, 5);
  EXPECT_EQ(r.committed, 2);
  EXPECT_EQ(r.rejected, 1);
  EXPECT_EQ(r.aborted, 2);
  EXPECT_DOUBLE_EQ(r.ddt_virtual_mean_ms, 25);
  EXPECT_DOUBLE_EQ(r.ddt_virtual_min_ms, 10);
  EXPECT_DOUBLE_EQ(r.ddt_virtual_max_ms, 40);
  EXPECT_DOUBLE_EQ(r.request_interval_ms, 3.5);
  EXPECT_EQ(r.proof_bytes, 1758);
  EXPECT_EQ(r.ddt_wall_mean_ms, 0);
  EXPECT_EQ(r.seed, cfg.seed);
}

TEST(Bench, SweepFileParsing) {
  auto s = parse_sweep("variable: key_size\nvalues: [224, 256]\nrepetitions: 2\nbase: {seed: 5}\n");
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->variable, SweepVariable::KeySize);
  EXPECT_EQ(s->values, (std::vector<std::int64_t>{224, 256}));
  EXPECT_EQ(s->repetitions, 2);
  EXPECT_EQ(s->base.seed, 5u);
  EXPECT_FALSE(parse_sweep("variable: key_size\nvalues: [224]\nextra: 1\n").ok());
  EXPECT_FALSE(parse_sweep("values: [224]\n").ok());
  EXPECT_FALSE(parse_sweep("variable: colour\nvalues: [1]\n").ok());
  EXPECT_TRUE(load_sweep(std::string(LPCHAIN_SCENARIOS) + "/concurrency_sweep.yaml").ok());
}

TEST(Bench, FailingPointsYieldErrorRows) {
  SweepSpec spec;
  spec.variable = SweepVariable::KeySize;
  spec.values = {224, 300};
  spec.base.population = sim::PopulationSpec{40, 4, 200, 0, 0};
  spec.base.warmup_ms = 20'000;
  auto rows = run_sweep(spec);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_TRUE(rows[0].error.empty());
  EXPECT_EQ(rows[0].committed, 1);
  EXPECT_FALSE(rows[1].error.empty());
  EXPECT_EQ(rows[1].runs, 0);
}

}  // namespace
}  // namespace lpchain::bench
