// Copyright 2026 The qhartley Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qhartley/cli/commands.hpp"
#include "qhartley/cli/config.hpp"
#include "qhartley/cli/output.hpp"
#include "qhartley/types.hpp"

namespace qh::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() / ("qhartley_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = root_ / name;
    std::ofstream(p) << text;
    return p;
  }

  int run(const std::string& command, CommandLine cl) {
    std::ostringstream out;
    err_.str("");
    return run_command(command, cl, out, err_);
  }

  fs::path root_;
  std::ostringstream err_;
};

constexpr const char* kTinyTrain = R"([model]
feature = hartley
n = 2
depth = 1

[target]
kind = exponential

[train]
epochs = 40
seed = 5
)";

TEST(Config, DefaultsAreFullyResolved) {
  const RunConfig c;
  EXPECT_EQ(c.integer("model", "n"), 5);
  EXPECT_EQ(c.string("target", "kind"), "ou");
  EXPECT_FALSE(c.is_set("sample", "model"));
  EXPECT_FALSE(c.snapshot()["output"].is_object());
}

TEST(Config, IniValuesAreTyped) {
  const RunConfig c = RunConfig::from_ini("[model]\nn = 3\noverlap_regularizer = false\n[train]\nlearning_rate = 2.5e-3\n");
  EXPECT_EQ(c.integer("model", "n"), 3);
  EXPECT_FALSE(c.boolean("model", "overlap_regularizer"));
  EXPECT_EQ(c.real("train", "learning_rate"), 2.5e-3);
  EXPECT_THROW(RunConfig::from_ini("[model]\nn = three\n"), ConfigError);
  EXPECT_THROW(RunConfig::from_ini("[model]\nn = 3.5\n"), ConfigError);
  EXPECT_THROW(RunConfig::from_ini("[train]\nseed = -1\n"), ConfigError);
  EXPECT_THROW(RunConfig::from_ini("[model]\noverlap_regularizer = yes\n"), ConfigError);
}

TEST(Config, UnknownKeysAndSectionsAreFatal) {
  EXPECT_THROW(RunConfig::from_ini("[model]\nwidth = 3\n"), ConfigError);
  EXPECT_THROW(RunConfig::from_ini("[modle]\nn = 3\n"), ConfigError);
  EXPECT_THROW(RunConfig::from_json(nlohmann::json{{"train", {{"epoch", 5}}}}), ConfigError);
  EXPECT_THROW(RunConfig::from_json(nlohmann::json{{"train", {{"epochs", "5"}}}}), ConfigError);
}

TEST(Config, JsonSnapshotRoundTrips) {
  const RunConfig c = RunConfig::from_ini(kTinyTrain);
  const RunConfig back = RunConfig::from_json(c.snapshot());
  EXPECT_EQ(back.snapshot().dump(), c.snapshot().dump());
}

TEST(Config, TargetDefaultsFillMissingParameters) {
  const RunConfig c = RunConfig::from_ini("[target]\nkind = gbm\nsigma = 0.25\n");
  const TargetSpec t = c.target_spec();
  EXPECT_EQ(t.param("sigma"), 0.25);
  EXPECT_EQ(t.param("x_i"), 12.0);
  EXPECT_THROW(RunConfig::from_ini("[target]\nkind = gbm\nrho = 0.2\n").target_spec(), ConfigError);
  EXPECT_THROW(RunConfig::from_ini("[target]\nkind = ou\nsigma = 0\n").target_spec(), ConfigError);
}

TEST(Output, CsvUsesSeventeenDigitsAndMetadata) {
  const fs::path p = fs::temp_directory_path() / "qhartley_csv_test.csv";
  CsvWriter w(p, {{"n", "3"}}, {"x", "p"});
  w.row({std::int64_t{1}, 0.1});
  w.close();
  EXPECT_EQ(read_file(p), "# n: 3\nx,p\n1,0.10000000000000001\n");
  fs::remove(p);
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_F(CliTest, TrainWritesArtifactsAndRerunIsByteIdentical) {
  CommandLine cl;
  cl.config = write("train.ini", kTinyTrain).string();
  cl.out = (root_ / "a").string();
  ASSERT_EQ(run("train", cl), kOk) << err_.str();
  for (const char* f : {"config.json", "model.json", "loss.csv", "grid.csv", "report.json"}) {
    EXPECT_TRUE(fs::exists(root_ / "a" / f)) << f;
  }
  CommandLine again;
  again.config = (root_ / "a" / "config.json").string();
  again.out = (root_ / "b").string();
  ASSERT_EQ(run("train", again), kOk) << err_.str();
  for (const char* f : {"config.json", "model.json", "loss.csv", "grid.csv", "report.json"}) {
    EXPECT_EQ(read_file(root_ / "a" / f), read_file(root_ / "b" / f)) << f;
  }
  const std::string loss = read_file(root_ / "a" / "loss.csv");
  EXPECT_NE(loss.find("# seed: 5"), std::string::npos);
  EXPECT_NE(loss.find("# config: {"), std::string::npos);
}

TEST_F(CliTest, SeedFlagOverridesConfig) {
  CommandLine cl;
  cl.config = write("train.ini", kTinyTrain).string();
  cl.out = (root_ / "a").string();
  cl.seed = 99;
  ASSERT_EQ(run("train", cl), kOk);
  EXPECT_EQ(RunConfig::load((root_ / "a" / "config.json").string()).unsigned_integer("train", "seed"), 99u);
}

TEST_F(CliTest, SampleNeedsAnExistingMatchingModel) {
  CommandLine cl;
  cl.out = (root_ / "s").string();
  cl.model = (root_ / "missing.json").string();
  EXPECT_EQ(run("sample", cl), kConfigError);

  CommandLine train;
  train.config = write("train.ini", kTinyTrain).string();
  train.out = (root_ / "t").string();
  ASSERT_EQ(run("train", train), kOk);
  cl.model = (root_ / "t" / "model.json").string();
  cl.shots = 5000;
  ASSERT_EQ(run("sample", cl), kOk) << err_.str();
  EXPECT_TRUE(fs::exists(root_ / "s" / "counts.csv"));
  EXPECT_TRUE(fs::exists(root_ / "s" / "histogram.csv"));
  const std::string hist = read_file(root_ / "s" / "histogram.csv");
  EXPECT_NE(hist.find("# model_sha256: " + sha256_file(*cl.model)), std::string::npos);
  EXPECT_NE(hist.find("# shots: 5000"), std::string::npos);
  EXPECT_EQ(run("sample2d", cl), kConfigError);
}

TEST_F(CliTest, VerifyExitCodes) {
  CommandLine cl;
  cl.out = (root_ / "v").string();
  cl.n_min = 1;
  cl.n_max = 3;
  EXPECT_EQ(run("verify", cl), kOk) << err_.str();
  cl.corrupt_qht = true;
  EXPECT_EQ(run("verify", cl), kCheckFailure);
  EXPECT_NE(err_.str().find("qht_equals_dht"), std::string::npos);
  CommandLine bad;
  bad.out = (root_ / "w").string();
  bad.n_min = 0;
  EXPECT_EQ(run("verify", bad), kConfigError);
}

TEST_F(CliTest, ConfigErrorsMapToExitTwo) {
  CommandLine cl;
  cl.out = (root_ / "x").string();
  cl.config = write("bad.ini", "[train]\nepochz = 3\n").string();
  EXPECT_EQ(run("train", cl), kConfigError);
  cl.config = write("sigma.ini", "[target]\nkind = ou\nsigma = 0\n").string();
  EXPECT_EQ(run("train", cl), kConfigError);
  cl.config = write("empty.ini", "[compare]\nschemes = ,\n").string();
  EXPECT_EQ(run("compare", cl), kConfigError);
  EXPECT_EQ(run("no-such-command", {}), kConfigError);
}

TEST_F(CliTest, OverlapMapEmitsGrid) {
  CommandLine cl;
  cl.out = (root_ / "o").string();
  cl.config = write("o.ini", "[overlap]\nn = 2\nstep = 0.5\n").string();
  ASSERT_EQ(run("overlap-map", cl), kOk);
  const std::string csv = read_file(root_ / "o" / "overlap.csv");
  // 7 grid points -> 49 pairs, plus header and metadata.
  std::size_t rows = 0;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) rows += !line.empty() && line[0] != '#';
  EXPECT_EQ(rows, 50u);
}

}  // namespace
}  // namespace qh::cli
