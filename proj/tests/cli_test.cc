// Copyright 2026 The putbound Authors
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

// Drives the CLI binary end to end through temp files.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("putbound_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }

  void write_file(const std::string& name, const std::string& content) {
    std::ofstream out(path(name));
    out << content;
  }

  std::string read_file(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  int run(const std::string& args, const std::string& out_name = "stdout") {
    const std::string cmd = std::string(PUTBOUND_CLI_PATH) + " " + args +
                            " > " + path(out_name) + " 2> " + path("stderr");
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  }

  fs::path dir_;
};

constexpr const char* kDemoConfig = R"json({
  "distribution": {"matrix": [[0.42, 0.18], [0.16, 0.24]]},
  "mechanism": "identity",
  "leakage": "pc",
  "utility": "pc"
})json";

TEST_F(CliTest, MeasureDemoMatrix) {
  write_file("cfg.json", kDemoConfig);
  ASSERT_EQ(run("measure --config " + path("cfg.json")), 0);
  const json report = json::parse(read_file("stdout"));
  EXPECT_NEAR(report.at("leakage").at("value").get<double>(), 0.66, 1e-12);
  EXPECT_EQ(report.at("leakage").at("unit"), "probability");
}

TEST_F(CliTest, MeasureProductJointIsZero) {
  write_file("cfg.json", R"json({
    "distribution": {"matrix": [[0.18, 0.42], [0.12, 0.28]]},
    "mechanism": {"rr": 1.0},
    "leakage": "f:chi2",
    "utility": "f:chi2"
  })json");
  ASSERT_EQ(run("measure --config " + path("cfg.json")), 0);
  const json report = json::parse(read_file("stdout"));
  EXPECT_NEAR(report.at("leakage").at("value").get<double>(), 0.0, 1e-12);
}

TEST_F(CliTest, MalformedCsvGivesExitTwoWithLocation) {
  write_file("bad.csv", "s,x\na,0\noops\n");
  write_file("cfg.json", R"json({
    "distribution": {"csv": ")json" + path("bad.csv") + R"json("},
    "mechanism": "identity"
  })json");
  EXPECT_EQ(run("measure --config " + path("cfg.json")), 2);
  EXPECT_NE(read_file("stderr").find(":3:"), std::string::npos);
}

TEST_F(CliTest, BoundTableRowsAndShannonRejection) {
  write_file("cfg.json", R"json({
    "distribution": {"matrix": [[0.42, 0.18], [0.16, 0.24]]},
    "n": 2000, "beta": 0.1,
    "measures": ["pc", "sibson(inf)", "maxal(2)"]
  })json");
  ASSERT_EQ(run("bound --config " + path("cfg.json") + " --output " +
                path("bounds.csv")),
            0);
  std::istringstream csv(read_file("bounds.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "measure,side,n,beta,radius,constant,bound");
  std::getline(csv, line);
  EXPECT_EQ(line.substr(0, 11), "pc,privacy,");
  EXPECT_NE(line.find(",1,"), std::string::npos);  // constant 1
  // sibson(inf) utility row: bound 0.
  std::getline(csv, line);
  std::getline(csv, line);
  std::getline(csv, line);
  EXPECT_NE(line.find("sibson(inf),utility"), std::string::npos);
  EXPECT_EQ(line.substr(line.size() - 2), ",0");
  // Sidecar carries the effective config.
  const json meta = json::parse(read_file("bounds.csv.meta.json"));
  EXPECT_EQ(meta.at("command"), "bound");

  // A sides filter restricts the table to one row per measure.
  write_file("one_side.json", R"json({
    "distribution": {"matrix": [[0.42, 0.18], [0.16, 0.24]]},
    "n": 2000, "measures": ["pc", "maxal(2)"], "sides": ["privacy"]
  })json");
  ASSERT_EQ(run("bound --config " + path("one_side.json")), 0);
  std::istringstream filtered(read_file("stdout"));
  std::size_t rows = 0;
  for (std::string l; std::getline(filtered, l);) ++rows;
  EXPECT_EQ(rows, 3u);  // header + two privacy rows

  write_file("bad.json", R"json({
    "distribution": {"matrix": [[0.42, 0.18], [0.16, 0.24]]},
    "n": 2000, "measures": ["shannon"]
  })json");
  EXPECT_EQ(run("bound --config " + path("bad.json")), 2);
}

TEST_F(CliTest, DesignAndInfeasibleExitCode) {
  write_file("cfg.json", R"json({
    "distribution": {"matrix": [[0.42, 0.18], [0.16, 0.24]]},
    "family": "rr", "eps": 0.62
  })json");
  ASSERT_EQ(run("design --config " + path("cfg.json")), 0);
  const json result = json::parse(read_file("stdout"));
  EXPECT_LE(result.at("achieved_leakage").get<double>(), 0.62 + 1e-9);
  // Budget below epsilon_min = 0.6: infeasible, exit 3.
  EXPECT_EQ(run("design --config " + path("cfg.json") + " --eps 0.55"), 3);
}

TEST_F(CliTest, LatticeGuardGivesExitFour) {
  write_file("cfg.json", R"json({
    "distribution": {"matrix": [[0.42, 0.18], [0.16, 0.24]]},
    "family": {"kind": "grid", "outputs": 5, "step": 0.01}, "eps": 0.7
  })json");
  EXPECT_EQ(run("design --config " + path("cfg.json")), 4);
}

TEST_F(CliTest, UniformDesignReport) {
  write_file("cfg.json", R"json({
    "distribution": {"pq": [0.6, 0.2]},
    "family": "rr", "eps": 0.75, "r": 0.02, "seed": 5
  })json");
  ASSERT_EQ(run("uniform --config " + path("cfg.json")), 0);
  const json result = json::parse(read_file("stdout"));
  EXPECT_NEAR(result.at("shrunk_epsilon").get<double>(), 0.73, 1e-12);
  EXPECT_TRUE(result.at("verification").at("pass").get<bool>());
}

TEST_F(CliTest, PreprocessRoundTrip) {
  std::ostringstream samples;
  samples << "s,x\n";
  for (int i = 0; i < 45; ++i) samples << "a,0\n";
  for (int i = 0; i < 45; ++i) samples << "b,1\n";
  for (int i = 0; i < 10; ++i) samples << "a,2\n";
  write_file("raw.csv", samples.str());
  write_file("cfg.json", R"json({
    "distribution": {"csv": ")json" + path("raw.csv") + R"json("},
    "gamma": 0.2
  })json");
  ASSERT_EQ(run("preprocess --config " + path("cfg.json") + " --output " +
                path("merged.csv")),
            0);
  const std::string merged = read_file("merged.csv");
  EXPECT_NE(merged.find("__merged__"), std::string::npos);
  const json map = json::parse(read_file("merged.csv.map.json"));
  EXPECT_DOUBLE_EQ(map.at("gamma").get<double>(), 0.2);
  EXPECT_EQ(map.at("kept").size(), 2u);

  // gamma = 0 keeps every symbol; gamma = 1 sinks everything.
  ASSERT_EQ(run("preprocess --config " + path("cfg.json") +
                " --gamma 0 --output " + path("passthrough.csv")),
            0);
  EXPECT_NE(read_file("passthrough.csv").find("a,0"), std::string::npos);
  ASSERT_EQ(run("preprocess --config " + path("cfg.json") +
                " --gamma 1 --output " + path("all.csv")),
            0);
  EXPECT_EQ(read_file("all.csv").find(",0\n"), std::string::npos);
}

TEST_F(CliTest, ExperimentRequiresSeedAndIsByteStable) {
  write_file("cfg.json", R"json({
    "distribution": {"matrix": [[0.42, 0.18], [0.16, 0.24]]},
    "family": "rr", "eps": 0.65, "n": [200], "trials": 3, "beta": 0.1
  })json");
  EXPECT_EQ(run("experiment discrepancy --config " + path("cfg.json") +
                " --output " + path("d.csv")),
            2);
  ASSERT_EQ(run("experiment discrepancy --config " + path("cfg.json") +
                " --seed 11 --output " + path("d1.csv")),
            0);
  ASSERT_EQ(run("experiment discrepancy --config " + path("cfg.json") +
                " --seed 11 --output " + path("d2.csv")),
            0);
  EXPECT_EQ(read_file("d1.csv"), read_file("d2.csv"));
  EXPECT_NE(read_file("d1.csv"), "");
  ASSERT_EQ(run("experiment discrepancy --config " + path("cfg.json") +
                " --seed 12 --output " + path("d3.csv")),
            0);
  EXPECT_NE(read_file("d1.csv"), read_file("d3.csv"));
}

TEST_F(CliTest, ExperimentConvergenceColumns) {
  write_file("cfg.json", R"json({
    "distribution": {"matrix": [[0.42, 0.18], [0.16, 0.24]]},
    "leakage": "f:chi2", "utility": "f:chi2",
    "eps": 0.05, "eps_grid": [0, 0.05, 0.1],
    "n": [100], "trials": 2, "grid_outputs": 2, "grid_step": 0.02
  })json");
  ASSERT_EQ(run("experiment convergence --config " + path("cfg.json") +
                " --seed 4 --output " + path("c.csv")),
            0);
  std::istringstream csv(read_file("c.csv"));
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header,
            "n,trial,eps,tradeoff_emp,tradeoff_true,infeasible,delta_n,dist");
  std::size_t rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  EXPECT_EQ(rows, 6u);  // 1 n x 2 trials x 3 budgets
}

TEST_F(CliTest, ExperimentUniformGapColumn) {
  write_file("cfg.json", R"json({
    "distribution": {"pq": [0.6, 0.2]},
    "family": "rr", "eps": 0.75, "r": [0.01], "seed": 3,
    "ball_samples": 100
  })json");
  ASSERT_EQ(run("experiment uniform --config " + path("cfg.json") +
                " --output " + path("u.csv")),
            0);
  std::istringstream csv(read_file("u.csv"));
  std::string header, row;
  std::getline(csv, header);
  std::getline(csv, row);
  // gap bound = 2r (1 + slope) = 0.048 for slope 1.4, via the closed form.
  EXPECT_NE(row.find(",0.048"), std::string::npos) << row;
}

TEST_F(CliTest, BundledSampleDataSmoke) {
  const std::string data =
      std::string(PUTBOUND_DATA_DIR) + "/synthetic_2x2.csv";
  if (!fs::exists(data)) GTEST_SKIP() << "bundled data not present";
  write_file("cfg.json", R"json({
    "distribution": {"csv": ")json" + data + R"json("},
    "mechanism": "identity"
  })json");
  ASSERT_EQ(run("measure --config " + path("cfg.json")), 0);
  const json report = json::parse(read_file("stdout"));
  // 2000 draws from the demo matrix: the plug-in guessing probability
  // lands near 0.66.
  EXPECT_NEAR(report.at("leakage").at("value").get<double>(), 0.66, 0.05);
}

}  // namespace
