// Copyright 2026 The bwbounds Authors
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

#include "app/cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "app/paper_tables.h"
#include "json.hpp"

namespace bwbounds::app {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "bwbounds");
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bwbounds_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

TEST_F(CliTest, BoundsOnCube) {
  const Result r = Invoke({"--graph", "hamming:3,2", "--format", "json", "--runs", "20", "--workers",
                        "1"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["graph"], "hamming:3,2");
  EXPECT_EQ(j["n"], 8);
  EXPECT_NE(r.err.find("lower bound 4"), std::string::npos) << r.err;
}

TEST_F(CliTest, ExplicitPartition) {
  const Result r = Invoke({"--graph", "kneser:5,2", "--methods", "qap", "--m", "3,4,3", "--format",
                        "json", "--workers", "1"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["bounds"].size(), 1u);
  EXPECT_EQ(j["bounds"][0]["bandwidth_lb"], 5);
}

TEST_F(CliTest, TableAndCsvFormats) {
  const Result table = Invoke({"--graph", "hamming:2,2", "--methods", "eig,heuristic", "--runs", "5"});
  ASSERT_EQ(table.code, 0);
  EXPECT_NE(table.out.find("tight: bandwidth = 2"), std::string::npos) << table.out;
  const Result csv =
      Invoke({"--graph", "hamming:2,2", "--methods", "eig", "--format", "csv", "--workers", "1"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_NE(csv.out.find("eig"), std::string::npos);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"--bogus"},
        {"--graph", "cube:3"},
        {"--graph", "file:/nonexistent/graph.txt"},
        {"--graph", "hamming:3,2", "--m", "1,2"},
        {"--graph", "hamming:3,2", "--m", "2,3,3", "--scan"},
        {"--graph", "hamming:3,2", "--m", "2,3,4"},
        {"--graph", "hamming:3,2", "--methods", "sdp"},
        {"--graph", "hamming:3,2", "--format", "xml"},
        {"paper-table", "tesseract"},
        {}}) {
    const Result r = Invoke(args);
    EXPECT_EQ(r.code, 2) << r.out;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["error"]["exit_code"], 2);
  }
}

TEST_F(CliTest, BoundErrorExitsOne) {
  const Result r = Invoke({"--graph", "hamming:3,2", "--methods", "qap", "--m", "2,3,3", "--max-vars",
                        "1", "--workers", "1"});
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_EQ(nlohmann::json::parse(r.out)["error"]["kind"], "bound");
}

TEST_F(CliTest, HelpAndVersion) {
  EXPECT_EQ(Invoke({"--help"}).code, 0);
  const Result v = Invoke({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("0.1.0"), std::string::npos);
}

TEST_F(CliTest, CacheHitIsBitIdentical) {
  const std::vector<std::string> args = {"--graph",     "johnson:6,3", "--methods",
                                         "eig,qap,heuristic", "--runs", "10",
                                         "--format",    "json",        "--workers",
                                         "1",           "--cache-dir", (dir_ / "cache").string()};
  const Result first = Invoke(args);
  ASSERT_EQ(first.code, 0) << first.out;
  EXPECT_FALSE(fs::is_empty(dir_ / "cache"));
  const Result second = Invoke(args);
  ASSERT_EQ(second.code, 0);
  EXPECT_EQ(first.out, second.out);
}

TEST_F(CliTest, LabelingAndOutFiles) {
  const fs::path lab = dir_ / "labels.txt";
  const fs::path rep = dir_ / "report.json";
  const Result r = Invoke({"--graph", "hamming:3,2", "--methods", "heuristic", "--runs", "10",
                        "--labeling-out", lab.string(), "--out", rep.string(), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(lab);
  int count = 0, x;
  while (in >> x) ++count;
  EXPECT_EQ(count, 8);
  std::ifstream rin(rep);
  EXPECT_NO_THROW(nlohmann::json::parse(rin));
}

TEST_F(CliTest, PaperTableHeaderOnly) {
  const Result r = Invoke({"paper-table", "hypercube", "--max-n", "0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "graph,n,bw_eig,bw_QAP,bw_fix,ub,status\n");
}

TEST_F(CliTest, PaperTableSmallRows) {
  const Result r = Invoke({"paper-table", "hypercube", "--max-n", "8", "--workers", "1"});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("\"hamming:2,2\",4,2,2,-,2,ok"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"hamming:3,2\",8,3,4,-,4,ok"), std::string::npos) << r.out;
}

TEST(PaperTableTest, LongRowsAreSkipped) {
  TableDef def{"t", "t", {{"hamming:2,2", 4, true}}};
  TableOptions opts;
  std::ostringstream out;
  WritePaperTable(def, opts, ResultCache(""), out);
  EXPECT_NE(out.str().find("\"hamming:2,2\",4,,,,,skipped (long-running)"), std::string::npos)
      << out.str();
  for (const TableDef& t : Tables()) {
    EXPECT_NO_THROW(FindTable(t.id));
    for (const TableRow& row : t.rows) {
      if (row.n > 35) EXPECT_TRUE(row.long_running) << row.spec;
    }
  }
}

}  // namespace
}  // namespace bwbounds::app
