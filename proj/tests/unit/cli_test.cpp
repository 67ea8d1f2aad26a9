// Copyright 2026 The TIFA-GCL Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "app.hpp"
#include "tifa/common.hpp"

namespace tifa::app {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("tifa_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
    config_.synth = SbmParams{2, 40, 0.15, 0.02, 0.6, 8, 10};
    config_.train.max_epochs = 15;
    config_.train.min_epochs = 5;
    config_.train.hidden_dim = 8;
  }
  void TearDown() override { fs::remove_all(root_); }

  RunConfig with(std::string sub, const std::string& dir) const {
    RunConfig c = config_;
    c.subcommand = std::move(sub);
    c.out = root_ / dir;
    return c;
  }

  fs::path root_;
  RunConfig config_;
};

TEST_F(Cli, EchoListsEveryFieldWithProvenanceAndRoundTrips) {
  const json echo = echo_config(config_);
  for (const ConfigField& f : config_fields()) {
    EXPECT_TRUE(echo["config"].contains(f.key)) << f.key;
    const std::string src = echo["provenance"][f.key];
    EXPECT_TRUE(src == "published" || src == "implementation") << f.key;
  }
  RunConfig copy;
  apply_json(copy, echo);
  EXPECT_EQ(echo_config(copy)["config"], echo["config"]);
}

TEST_F(Cli, RejectsUnknownKeysAndBadTypes) {
  RunConfig c;
  EXPECT_THROW(apply_json(c, json{{"alpah", 0.1}}), ConfigError);
  EXPECT_THROW(apply_json(c, json{{"n_add", 1.5}}), ConfigError);
  EXPECT_THROW(apply_json(c, json{{"dump_lp", 1}}), ConfigError);
  EXPECT_THROW(apply_json(c, json{{"mode", "gat"}}), ConfigError);
  apply_json(c, json{{"seeds", "4,5"}, {"pairs", "3,10,20"}, {"sigma", 2.5}});
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{4, 5}));
  EXPECT_EQ(c.analysis.pairs.window.negt_end, 20);
  EXPECT_EQ(*c.perturb.sigma, 2.5);
  EXPECT_EQ(flag_value("0.25"), json(0.25));
  EXPECT_EQ(flag_value("tifa-gcl"), json("tifa-gcl"));
}

TEST_F(Cli, SummaryMeanAndSampleStd) {
  const std::vector<double> accs{0.8, 0.9};
  const ModeSummary s = summarize(TrainMode::kBaseline, accs);
  EXPECT_NEAR(s.mean, 0.85, 1e-15);
  EXPECT_NEAR(s.std, std::sqrt(0.005), 1e-15);
  const std::vector<double> same{0.7, 0.7, 0.7};
  EXPECT_EQ(summarize(TrainMode::kBaseline, same).std, 0.0);
}

TEST_F(Cli, AnalyzeWritesParseableReproducibleFiles) {
  RunConfig c = with("analyze", "a1");
  c.dump_lp = true;
  c.grid = 4;
  run(c);
  for (const char* name : {"config.json", "tig.tsv", "grid.csv", "bins.csv", "pairs.json",
                           "intra_ratio.csv", "lp_z.tsv", "lp_z_star.tsv", "analysis.json"}) {
    EXPECT_TRUE(fs::exists(c.out / name)) << name;
  }
  EXPECT_EQ(lines(c.out / "tig.tsv").size(), 81u);
  const json pairs = json::parse(slurp(c.out / "pairs.json"));
  EXPECT_EQ(pairs["positives"].size(), 80u);
  int total = 0;
  const auto grid = lines(c.out / "grid.csv");
  EXPECT_EQ(grid.size(), 17u);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    std::istringstream row(grid[i]);
    std::string cell;
    for (int col = 0; col < 3; ++col) std::getline(row, cell, ',');
    total += std::stoi(cell);
  }
  EXPECT_EQ(total, 80);

  RunConfig again = c;
  again.out = root_ / "a2";
  run(again);
  for (const char* name : {"tig.tsv", "grid.csv", "bins.csv", "pairs.json", "intra_ratio.csv",
                           "lp_z_star.tsv", "analysis.json"}) {
    EXPECT_EQ(slurp(c.out / name), slurp(again.out / name)) << name;
  }
}

TEST_F(Cli, TrainSummaryMatchesPerRunReports) {
  RunConfig c = with("train", "t1");
  c.seeds = {1, 2};
  run(c);
  const json summary = json::parse(slurp(c.out / "summary.json"));
  ASSERT_EQ(summary["modes"].size(), 3u);
  for (const json& row : summary["modes"]) {
    const std::string mode = row["mode"];
    double sum = 0.0;
    for (std::uint64_t seed : c.seeds) {
      const fs::path dir = c.out / mode / ("seed_" + std::to_string(seed));
      const json report = json::parse(slurp(dir / "report.json"));
      EXPECT_EQ(report["mode"], mode);
      EXPECT_TRUE(fs::exists(dir / "config.json"));
      const auto metrics = lines(dir / "metrics.jsonl");
      EXPECT_EQ(metrics.size(), report["epochs_run"].get<std::size_t>());
      const json first = json::parse(metrics.front());
      for (const char* key : {"epoch", "lr", "loss_ce", "loss_unsup_mean", "val_acc", "test_acc"}) {
        EXPECT_TRUE(first.contains(key)) << key;
      }
      sum += report["test_acc"].get<double>();
    }
    EXPECT_NEAR(row["mean_test_acc"].get<double>(), sum / 2.0, 1e-12);
  }
  EXPECT_EQ(lines(c.out / "summary.csv").size(), 4u);
}

TEST_F(Cli, SampleOneRootGivesOneRecordAndPerturbIsDeterministic) {
  RunConfig c = with("sample", "s1");
  c.saint = true;
  c.perturb_dump = true;
  c.sampler.n_roots = 1;
  run(c);
  const auto records = lines(c.out / "subgraphs.jsonl");
  ASSERT_EQ(records.size(), 1u);
  const json rec = json::parse(records[0]);
  EXPECT_LE(rec["num_nodes"].get<int>(), 1 * (c.sampler.walk_len + 1));
  RunConfig again = c;
  again.out = root_ / "s2";
  run(again);
  for (const char* name : {"added.tsv", "removed.tsv", "touched.tsv", "perturb.json",
                           "subgraphs.jsonl"}) {
    EXPECT_EQ(slurp(c.out / name), slurp(again.out / name)) << name;
  }
  RunConfig neither = with("sample", "s3");
  EXPECT_THROW(run(neither), ConfigError);
}

TEST_F(Cli, BinaryAppliesPrecedenceAndReportsErrors) {
  const char* exe = std::getenv("TIFA_CLI");
  if (exe == nullptr) GTEST_SKIP() << "TIFA_CLI not set";
  fs::create_directories(root_);
  std::ofstream(root_ / "cfg.json") << R"({"alpha": 0.2, "lambda": 0.05})";
  const fs::path out = root_ / "synth";
  const std::string cmd = std::string(exe) + " synth --config " + (root_ / "cfg.json").string() +
                          " --alpha 0.25 --synth 2,10,0.5,0.1,0.5,2 --out " + out.string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  const json echo = json::parse(slurp(out / "config.json"));
  EXPECT_EQ(echo["config"]["alpha"], 0.25);
  EXPECT_EQ(echo["config"]["lambda"], 0.05);
  EXPECT_EQ(echo["config"]["w_max"], 2.0);
  EXPECT_TRUE(fs::exists(out / "edges.tsv"));

  const fs::path bad = root_ / "bad";
  const std::string fail = std::string(exe) + " train --dataset " + (root_ / "missing").string() +
                           " --out " + bad.string() + " 2>/dev/null";
  EXPECT_NE(std::system(fail.c_str()), 0);
  const json err = json::parse(slurp(bad / "error.json"));
  EXPECT_EQ(err["error"]["kind"], "data_error");
}

}  // namespace
}  // namespace tifa::app
