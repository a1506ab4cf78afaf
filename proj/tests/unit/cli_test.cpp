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
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

int cli(const std::string& args) {
  std::string cmd = std::string(LPCHAIN_CLI) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / "lpchain_cli_test";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string scenario(const char* name) const { return std::string(LPCHAIN_SCENARIOS) + "/" + name; }
  fs::path dir_;
};

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(cli(""), 64);
  EXPECT_EQ(cli("frobnicate"), 64);
  EXPECT_EQ(cli("run"), 64);
  EXPECT_EQ(cli("run a.yaml --bogus"), 64);
  EXPECT_EQ(cli("--help"), 0);
}

TEST_F(Cli, RunVerifyAudit) {
  fs::path out = dir_ / "run";
  ASSERT_EQ(cli("run " + scenario("explicit.yaml") + " --out " + out.string()), 0);
  EXPECT_TRUE(fs::exists(out / "outcomes.jsonl"));
  EXPECT_EQ(cli("verify " + (out / "proofs/0.hex").string() + " " + out.string()), 0);
  EXPECT_EQ(cli("audit " + (out / "decisions.chain").string()), 0);
  EXPECT_EQ(cli("audit " + (out / "provenance.chain").string()), 0);

  std::ifstream in(out / "proofs/1.hex");
  std::string hex;
  in >> hex;
  hex[hex.size() - 3] = hex[hex.size() - 3] == '0' ? '1' : '0';
  std::ofstream(dir_ / "tampered.hex") << hex << '\n';
  EXPECT_EQ(cli("verify " + (dir_ / "tampered.hex").string() + " " + out.string()), 2);

  std::ifstream chain_in(out / "decisions.chain");
  std::string header, entry;
  std::getline(chain_in, header);
  std::getline(chain_in, entry);
  entry[40] = entry[40] == 'a' ? 'b' : 'a';
  std::ofstream(dir_ / "broken.chain") << header << '\n' << entry << '\n';
  EXPECT_EQ(cli("audit " + (dir_ / "broken.chain").string()), 2);
}

TEST_F(Cli, ScenarioErrors) {
  EXPECT_EQ(cli("run " + (dir_ / "missing.yaml").string()), 1);
  std::ofstream(dir_ / "bad.yaml") << "n_supervisors: 0\n";
  EXPECT_EQ(cli("run " + (dir_ / "bad.yaml").string()), 1);
  std::ofstream(dir_ / "typo.yaml") << "seeds: 3\n";
  EXPECT_EQ(cli("run " + (dir_ / "typo.yaml").string()), 1);
  EXPECT_EQ(cli("run " + scenario("explicit.yaml") + " --format xml"), 1);
  EXPECT_EQ(cli("audit " + (dir_ / "none.chain").string()), 1);
}

TEST_F(Cli, SweepWritesRows) {
  fs::path rows = dir_ / "rows.csv";
  ASSERT_EQ(cli("sweep " + scenario("workers_sweep.yaml") + " --out " + rows.string()), 0);
  std::ifstream in(rows);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) ++n;
  EXPECT_EQ(n, 4);
}

}  // namespace
