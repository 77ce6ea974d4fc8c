// Copyright 2026 The entcorr Authors
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

#include "entcorr/cli.hpp"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

namespace entcorr {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

constexpr const char* kEpr = R"({"kind":"pure","dims":[2,2],"data":[[0.7071067811865476,0],[0,0],[0,0],[-0.7071067811865476,0]]})";
constexpr const char* kProduct = R"({"kind":"pure","dims":[2,2],"data":[[1,0],[0,0],[0,0],[0,0]]})";
constexpr const char* kGhz = R"({"kind":"pure","dims":[2,2,2],"data":[[0.7071067811865476,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0.7071067811865476,0]]})";
constexpr const char* kWerner = R"({"kind":"mixed","dims":[2,2],"data":[
  [[0.475,0],[0,0],[0,0],[0.45,0]],
  [[0,0],[0.025,0],[0,0],[0,0]],
  [[0,0],[0,0],[0.025,0],[0,0]],
  [[0.45,0],[0,0],[0,0],[0.475,0]]]})";
constexpr const char* kUnnormalized = R"({"kind":"pure","dims":[2,2],"data":[[1,0],[1,0],[0,0],[0,0]]})";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("entcorr_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }

  struct Result {
    int code;
    std::string out;
    std::string err;
  };

  static Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "entcorr");
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
  }

  fs::path dir_;
};

TEST_F(CliTest, MeasureEprMachineReport) {
  const Result r = call({"measure", "--state", file("epr.state", kEpr), "--format", "machine"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.err.empty());
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["kind"], "report");
  EXPECT_EQ(j["command"], "measure");
  EXPECT_EQ(j["version"], kToolVersion);
  EXPECT_NEAR(j["schmidt"]["lambdas"][0].get<double>(), 0.5, 1e-12);
  EXPECT_EQ(j["schmidt"]["rank"], 2);
  EXPECT_EQ(j["separable"], false);
  for (const auto& m : j["measures"]) EXPECT_NEAR(m["value"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(j["measures"].size(), 3u);
}

TEST_F(CliTest, MeasureProductIsSeparable) {
  const Result r = call({"measure", "--state", file("p.state", kProduct), "--format", "machine"});
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["separable"], true);
  for (const auto& m : j["measures"]) EXPECT_NEAR(m["value"].get<double>(), 0.0, 1e-12);
  EXPECT_TRUE(j["correlations"]["conditional"][0][1].is_null());
}

TEST_F(CliTest, MeasureThreePartyReportsTangle) {
  const Result r = call({"measure", "--state", file("ghz.state", kGhz), "--format", "machine"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(Json::parse(r.out)["three_tangle"].get<double>(), 1.0, 1e-9);
}

TEST_F(CliTest, MeasureMixedReportsConcurrence) {
  const Result r = call({"measure", "--state", file("w.state", kWerner), "--format", "machine"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["concurrence"].get<double>(), 0.85, 1e-12);
  EXPECT_EQ(j["routed_to_pure"], false);
}

TEST_F(CliTest, TextFormatIsDefault) {
  const Result r = call({"measure", "--state", file("epr.state", kEpr)});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("separable: false"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find('{'), std::string::npos);
}

TEST_F(CliTest, BellAnglesAndGrid) {
  const std::string epr = file("epr.state", kEpr);
  Result r = call({"bell", "--state", epr, "--angles", "0,0.7853981633974483,-0.39269908169872414,0.39269908169872414",
                   "--format", "machine"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(Json::parse(r.out)["chsh"]["s"].get<double>(), 2.0 * std::sqrt(2.0), 1e-9);
  r = call({"bell", "--state", epr, "--grid", "16", "--refine", "--format", "machine"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["chsh"]["abs_s"].get<double>(), 2.0 * std::sqrt(2.0), 1e-6);
  EXPECT_EQ(j["chsh"]["violates_classical_bound"], true);
}

TEST_F(CliTest, SimulateIsReproducible) {
  const std::string epr = file("epr.state", kEpr);
  const std::string rec1 = (dir_ / "a.record").string();
  const std::string rec2 = (dir_ / "b.record").string();
  const Result a = call({"simulate", "--state", epr, "--shots", "20000", "--seed", "5", "--record-out", rec1, "--format", "machine"});
  const Result b = call({"simulate", "--state", epr, "--shots", "20000", "--seed", "5", "--record-out", rec2, "--format", "machine",
                         "--threads", "4"});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  Json ja = Json::parse(a.out);
  Json jb = Json::parse(b.out);
  EXPECT_EQ(ja["simulation"]["counts"], jb["simulation"]["counts"]);
  EXPECT_EQ(ja["estimate"], jb["estimate"]);
  std::stringstream ra, rb;
  ra << std::ifstream(rec1).rdbuf();
  rb << std::ifstream(rec2).rdbuf();
  EXPECT_EQ(ra.str(), rb.str());
  EXPECT_FALSE(ra.str().empty());

  const Result again = call({"simulate", "--state", epr, "--shots", "20000", "--seed", "5", "--format", "machine"});
  EXPECT_EQ(Json::parse(again.out)["estimate"], ja["estimate"]);

  const Result from = call({"simulate", "--from-record", rec1, "--format", "machine"});
  ASSERT_EQ(from.code, 0) << from.err;
  EXPECT_EQ(Json::parse(from.out)["estimate"], ja["estimate"]);
  EXPECT_EQ(call({"validate", "--record", rec1}).code, 0);
}

TEST_F(CliTest, SimulateSchedule) {
  const Result r = call({"simulate", "--state", file("epr.state", kEpr), "--schedule", "100,10000", "--format", "machine"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["scan"].size(), 2u);
  EXPECT_EQ(call({"simulate", "--state", file("e.state", kEpr), "--schedule", "10000,100"}).code, 2);
}

TEST_F(CliTest, RoofOnPureInput) {
  const Result r = call({"roof", "--state", file("epr.state", kEpr), "--measure", "e2", "--format", "machine"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(Json::parse(r.out)["roof"]["value"].get<double>(), 1.0, 1e-9);
}

TEST_F(CliTest, ValidateState) {
  EXPECT_EQ(call({"validate", "--state", file("w.state", kWerner)}).code, 0);
  const Result bad = call({"validate", "--state", file("bad.state", kUnnormalized)});
  EXPECT_EQ(bad.code, 2);
  EXPECT_TRUE(bad.out.empty());
  EXPECT_FALSE(bad.err.empty());
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(call({}).code, 1);
  EXPECT_EQ(call({"frobnicate"}).code, 1);
  EXPECT_EQ(call({"measure", "--state", file("e.state", kEpr), "--format", "yaml"}).code, 1);
  EXPECT_EQ(call({"bell", "--state", file("e.state", kEpr), "--grid", "4"}).code, 1);
  EXPECT_EQ(call({"measure", "--state", (dir_ / "missing.state").string()}).code, 2);
  EXPECT_EQ(call({"measure", "--state", file("junk.state", "{")}).code, 2);
  EXPECT_EQ(call({"bell", "--state", file("g.state", kGhz), "--grid", "8"}).code, 2);
  EXPECT_EQ(call({"simulate", "--state", file("e.state", kEpr), "--shots", "0"}).code, 1);
  EXPECT_EQ(call({"validate"}).code, 1);
  EXPECT_EQ(call({"--version"}).code, 0);
}

TEST_F(CliTest, DiagnosticsGoToStandardError) {
  const Result r = call({"measure", "--state", (dir_ / "missing.state").string()});
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("entcorr:"), std::string::npos);
}

TEST_F(CliTest, BinaryExitStatus) {
  const std::string epr = file("epr.state", kEpr);
  const std::string out = (dir_ / "out.txt").string();
  int status = std::system((std::string(ENTCORR_CLI_PATH) + " measure --state " + epr + " > " + out + " 2>&1").c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 0);
  status = std::system((std::string(ENTCORR_CLI_PATH) + " validate --state " + file("bad.state", kUnnormalized) + " > " +
                        out + " 2>&1").c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 2);
  status = std::system((std::string(ENTCORR_CLI_PATH) + " --no-such-flag > " + out + " 2>&1").c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 1);
}

}  // namespace
}  // namespace entcorr
