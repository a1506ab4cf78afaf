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

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "lpchain/bench.hpp"
#include "lpchain/ledger.hpp"
#include "lpchain/sim/artifacts.hpp"
#include "lpchain/sim/scenario_io.hpp"
#include "lpchain/sim/world.hpp"

namespace fs = std::filesystem;
using namespace lpchain;

namespace {

constexpr int kOk = 0;
constexpr int kScenarioError = 1;
constexpr int kVerifyFailed = 2;
constexpr int kUsage = 64;

int report(const Failure& f) {
  std::cerr << "error: " << to_string(f.reason);
  if (!f.detail.empty()) std::cerr << ": " << f.detail;
  std::cerr << '\n';
  return kScenarioError;
}

struct RunArgs {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "jsonl";
  bool wall_time = false;
  bool no_trace = false;
};

int cmd_run(const RunArgs& a) {
  auto format = bench::format_from(a.format);
  if (!format) return report(format.failure());
  auto config = sim::load_scenario(a.scenario);
  if (!config) return report(config.failure());
  if (a.seed) config->seed = *a.seed;
  if (a.wall_time) config->wall_time = true;
  auto world = sim::build_world(*config);
  if (!world) return report(world.failure());
  world->set_trace(!a.out.empty() && !a.no_trace);
  auto outcomes = sim::run(*world);
  // Artifacts are written even for a failed run so the trace can be inspected.
  if (!a.out.empty()) {
    if (auto s = sim::write_run_artifacts(*world, a.out, *format); !s) return report(s.failure());
  }
  if (!outcomes) return report(outcomes.failure());
  bench::write_outcomes(std::cout, *outcomes, *format, config->wall_time);
  return kOk;
}

struct SweepArgs {
  std::string sweep;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "csv";
  bool wall_time = false;
};

int cmd_sweep(const SweepArgs& a) {
  auto format = bench::format_from(a.format);
  if (!format) return report(format.failure());
  auto spec = bench::load_sweep(a.sweep);
  if (!spec) return report(spec.failure());
  if (a.seed) spec->base.seed = *a.seed;
  if (a.wall_time) spec->base.wall_time = true;
  if (auto s = spec->validate(); !s) return report(s.failure());
  auto rows = bench::run_sweep(*spec);
  if (!a.out.empty()) {
    if (auto s = bench::export_rows(rows, *format, a.out); !s) return report(s.failure());
  } else {
    bench::write_rows(std::cout, rows, *format);
  }
  for (const auto& r : rows)
    if (!r.error.empty()) return kScenarioError;
  return kOk;
}

int cmd_verify(const std::string& proof_path, const std::string& chain_dir) {
  auto proof = sim::read_proof_file(proof_path);
  if (!proof) {
    std::cout << "invalid: " << to_string(proof.reason()) << '\n';
    return kVerifyFailed;
  }
  auto dir = sim::load_chain_dir(chain_dir);
  if (!dir) return report(dir.failure());
  auto scenario = sim::load_scenario(fs::path(chain_dir) / "scenario.yaml");
  LedgerConfig ledger = scenario ? scenario->ledger() : LedgerConfig{};
  Status s = verify_third_party(*proof, dir->decisions, dir->provenance, dir->keys, dir->acceptance(), ledger);
  if (!s) {
    std::cout << "invalid: " << to_string(s.reason());
    if (!s.failure().detail.empty()) std::cout << " (" << s.failure().detail << ")";
    std::cout << '\n';
    return kVerifyFailed;
  }
  std::cout << "valid\n";
  return kOk;
}

int cmd_audit(const std::string& path) {
  ChainFile file;
  try {
    file = read_chain_file(path);
  } catch (const Error& e) {
    return report(Failure{e.reason(), e.what()});
  }
  if (auto broken = audit_chain(file.entries)) {
    std::cout << "broken at entry " << *broken << " of " << file.entries.size() << '\n';
    return kVerifyFailed;
  }
  bool decodes = file.kind == ChainKind::Decision ? DecisionChain::from_entries(file.entries).ok()
                                                  : ProvenanceChain::from_entries(file.entries).ok();
  if (!decodes) {
    std::cout << "undecodable " << to_string(file.kind) << " chain\n";
    return kVerifyFailed;
  }
  std::cout << "ok " << to_string(file.kind) << ' ' << file.entries.size() << " entries\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lpchain: collusion-resistant location proof simulator"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario and print per-instance outcomes");
  run_cmd->add_option("scenario", run.scenario, "Scenario file (YAML)")->required();
  run_cmd->add_option("--seed", run.seed, "Override the scenario seed");
  run_cmd->add_option("--out", run.out, "Write chains, proofs, outcomes and trace to this directory");
  run_cmd->add_option("--format", run.format, "Outcome format: csv or jsonl");
  run_cmd->add_flag("--wall-time", run.wall_time, "Also measure wall-clock DDT and PGT");
  run_cmd->add_flag("--no-trace", run.no_trace, "Skip the event trace");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep and print metric rows");
  sweep_cmd->add_option("sweep", sweep.sweep, "Sweep file (YAML)")->required();
  sweep_cmd->add_option("--seed", sweep.seed, "Override the base scenario seed");
  sweep_cmd->add_option("--out", sweep.out, "Write rows to this file instead of stdout");
  sweep_cmd->add_option("--format", sweep.format, "Row format: csv or jsonl");
  sweep_cmd->add_flag("--wall-time", sweep.wall_time, "Also measure wall-clock DDT and PGT");

  std::string proof_path, chain_dir;
  auto* verify_cmd = app.add_subcommand("verify", "Check a proof against a run directory");
  verify_cmd->add_option("proof", proof_path, "Proof file (hex)")->required();
  verify_cmd->add_option("chain_dir", chain_dir, "Directory written by run --out")->required();

  std::string chain_path;
  auto* audit_cmd = app.add_subcommand("audit", "Check the hash links of a chain file");
  audit_cmd->add_option("chain", chain_path, "Chain file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*sweep_cmd) return cmd_sweep(sweep);
    if (*verify_cmd) return cmd_verify(proof_path, chain_dir);
    if (*audit_cmd) return cmd_audit(chain_path);
  } catch (const Error& e) {
    return report(Failure{e.reason(), e.what()});
  }
  return kUsage;
}
