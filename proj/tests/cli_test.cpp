// Copyright 2026 The hetnet Authors
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
#include <string>
#include <vector>

#include "hetnet/cli.hpp"

namespace hetnet {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "hetnet");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string scenario(const std::string& name) { return std::string(HETNET_SCENARIO_DIR) + "/" + name; }

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

TEST(Cli, DuopolyUnconstrained) {
  const CliRun r = run_cli({"duopoly", "--scenario", scenario("regions.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("region: A"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("b1s: 1.33333333333"), std::string::npos) << r.out;
}

TEST(Cli, DuopolyFloorOverride) {
  const CliRun r = run_cli({"duopoly", "--scenario", scenario("regions.json"), "--floors", "1.9,0.95"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("region: B_I"), std::string::npos) << r.out;
}

TEST(Cli, MonopolyScenario) {
  const CliRun r = run_cli({"monopoly", "--scenario", scenario("monopoly.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("b_small: 2.5"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("clipped: true"), std::string::npos) << r.out;
}

TEST(Cli, MonopolyRejectsTwoProviders) {
  const CliRun r = run_cli({"monopoly", "--scenario", scenario("regions.json")});
  EXPECT_EQ(r.code, cli::kExitInput);
}

TEST(Cli, RegionsCsv) {
  const CliRun r = run_cli({"regions", "--scenario", scenario("regions.json"), "--grid", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 26u);
  EXPECT_EQ(rows[0], "floor1,floor2,region,b1s,b2s");
  EXPECT_EQ(rows[1].rfind("0,0,A,", 0), 0u) << rows[1];
}

TEST(Cli, SweepCsvEqualityRegion) {
  const CliRun r = run_cli({"sweep", "--scenario", scenario("sweep_small_b.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 202u);
  EXPECT_EQ(rows[0], "b1_new,b2_new,sw_wo_star,sw_w_star,sw_w_ne,region,rev1,rev2");
  std::size_t region_a = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::vector<std::string> cells;
    std::istringstream is(rows[i]);
    for (std::string c; std::getline(is, c, ',');) cells.push_back(c);
    ASSERT_EQ(cells.size(), 8u) << rows[i];
    const double b1 = std::stod(cells[0]);
    if (cells[5] == "A") {
      ++region_a;
      EXPECT_GE(b1, 1.2 - 1e-9);
      EXPECT_LE(b1, 4.0 + 1e-9);
    }
  }
  // Grid step 0.03 puts 94 points on [1.2, 4].
  EXPECT_EQ(region_a, 94u);
}

TEST(Cli, SweepHumanReportsInterval) {
  const CliRun r = run_cli({"sweep", "--scenario", scenario("sweep_small_b.json"), "--format", "human", "--grid", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("threshold: 8.8"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("1.2"), std::string::npos);
}

TEST(Cli, OutputIsByteIdentical) {
  const std::vector<std::string> args{"regions", "--scenario", scenario("regions.json"), "--grid", "7"};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

TEST(Cli, OutFlagWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "hetnet_cli_out.txt";
  std::filesystem::remove(path);
  const CliRun r = run_cli({"duopoly", "--scenario", scenario("regions.json"), "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream body;
  body << in.rdbuf();
  EXPECT_NE(body.str().find("region: A"), std::string::npos);
}

TEST(Cli, MissingFieldIsNamed) {
  const auto path = write_temp("hetnet_missing.json",
                               R"({"params": {"n_mobile": 50, "n_fixed": 50, "r0": 50, "lambda_s": 2},
                                   "sps": [{"total": 2}, {"total": 1}]})");
  const CliRun r = run_cli({"duopoly", "--scenario", path.string()});
  EXPECT_EQ(r.code, cli::kExitInput);
  EXPECT_NE(r.err.find("params.alpha"), std::string::npos) << r.err;
}

TEST(Cli, UnknownKeyIsRejected) {
  const auto path = write_temp("hetnet_unknown.json",
                               R"({"params": {"alpha": 0.5, "n_mobile": 50, "n_fixed": 50, "r0": 50,
                                              "lambda_s": 2, "bogus": 1},
                                   "sps": [{"total": 2}, {"total": 1}]})");
  const CliRun r = run_cli({"duopoly", "--scenario", path.string()});
  EXPECT_EQ(r.code, cli::kExitInput);
  EXPECT_NE(r.err.find("params.bogus"), std::string::npos) << r.err;
}

TEST(Cli, MalformedJson) {
  const auto path = write_temp("hetnet_malformed.json", "{\"params\": ");
  EXPECT_EQ(run_cli({"duopoly", "--scenario", path.string()}).code, cli::kExitInput);
}

TEST(Cli, InvalidParameterFromFlags) {
  const CliRun r = run_cli({"duopoly", "--scenario", scenario("regions.json"), "--alpha", "1.5"});
  EXPECT_EQ(r.code, cli::kExitInput);
  EXPECT_NE(r.err.find("alpha"), std::string::npos) << r.err;
}

TEST(Cli, FloorAboveTotal) {
  const CliRun r = run_cli({"duopoly", "--scenario", scenario("regions.json"), "--floors", "3,0"});
  EXPECT_EQ(r.code, cli::kExitInput);
}

TEST(Cli, UnknownSubcommand) { EXPECT_EQ(run_cli({"bogus"}).code, cli::kExitInput); }

TEST(Cli, VerifyPasses) {
  const CliRun r = run_cli({"verify", "--scenario", scenario("regions.json"), "--grid", "2000", "--format", "csv"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(lines(r.out).at(0), "check,value,tolerance,pass");
}

}  // namespace
}  // namespace hetnet
