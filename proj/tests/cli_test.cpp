// Copyright 2026 The Symplectica Authors
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

#include <cmath>
#include <filesystem>
#include <cstdlib>
#include <sstream>

#include "cli.hpp"
#include "gtest/gtest.h"
#include "symplectica/io.hpp"
#include "symplectica/sampler.hpp"
#include "symplectica/schmidt.hpp"
#include "test_util.hpp"

using namespace symplectica;
using symplectica::testing::max_abs;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("symplectica_cli_" + std::string(::testing::UnitTest::GetInstance()
                                                 ->current_test_info()
                                                 ->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string &name) const { return (dir_ / name).string(); }

  void write(const std::string &name, const std::string &text) const {
    write_file_atomic(path(name), text);
  }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(CliTest, GenThenCheckPure) {
  const std::string s = path("s.json");
  ASSERT_EQ(cli({"gen", "tmss", "--r", "0.8", "--out", s}).code, 0);
  const CliRun r = cli({"check", s, "--pure"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j["pure"].get<bool>());
  EXPECT_LE(j["purity_residual"].get<double>(), 1e-12);
  EXPECT_NEAR(j["symplectic_eigenvalues"][0].get<double>(), 1.0, 1e-12);
}

TEST_F(CliTest, CheckRejectsMixedWhenPureRequested) {
  const std::string t = path("t.json");
  ASSERT_EQ(cli({"gen", "thermal", "--nu", "2,1.5", "--out", t}).code, 0);
  EXPECT_EQ(cli({"check", t}).code, 0);
  EXPECT_EQ(cli({"check", t, "--pure"}).code, 1);
}

TEST_F(CliTest, DofPrintsPureInvariant) {
  const CliRun r = cli({"dof", "--n", "3"});
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["pure_invariant"].get<int>(), 3);
  EXPECT_EQ(j["scheme"]["total"].get<int>(), 3);
}

TEST_F(CliTest, ExperimentCsvRows) {
  const std::vector<std::string> args{"experiment", "--n", "4..6", "--samples", "100",
                                      "--energy-per-mode", "5", "--seed", "7", "--csv"};
  const CliRun r = cli(args);
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 7u);
  EXPECT_EQ(lines[0], "n,ensemble,samples,energy,mean_entropy,stddev,stderr");
  EXPECT_EQ(lines[1].substr(0, 10), "4,general,");
  EXPECT_EQ(lines[6].substr(0, 12), "6,blockdiag,");
  EXPECT_EQ(cli(args).out, r.out);
}

TEST_F(CliTest, ExperimentFilesAreReproducible) {
  const std::string csv = path("e.csv");
  const std::vector<std::string> args{"experiment", "--n", "3,5", "--samples", "20",
                                      "--seed", "3", "--out", csv};
  ASSERT_EQ(cli(args).code, 0);
  const std::string first = read_text_file(csv);
  const std::string meta = read_text_file(path("e.meta.json"));
  ASSERT_EQ(cli(args).code, 0);
  EXPECT_EQ(read_text_file(csv), first);
  EXPECT_EQ(read_text_file(path("e.meta.json")), meta);
  const Json m = Json::parse(meta);
  EXPECT_EQ(m["seed"].get<int>(), 3);
  EXPECT_EQ(m["entropy_base"], "nats");
  EXPECT_EQ(m["measure"], std::string(kMeasureName));
  EXPECT_EQ(m["version"], std::string(kVersion));
  for (const auto &entry : std::filesystem::directory_iterator(dir_)) {
    EXPECT_EQ(entry.path().string().find(".tmp."), std::string::npos);
  }
}

TEST_F(CliTest, SeedIsMandatory) {
  EXPECT_EQ(cli({"experiment", "--n", "4", "--samples", "5"}).code, 2);
  EXPECT_EQ(cli({"sample", "--n", "4"}).code, 2);
  EXPECT_EQ(cli({"engineer", "--random", "--n", "4"}).code, 2);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"dof", "--n", "3", "--bogus"}).code, 2);
  EXPECT_EQ(cli({"dof"}).code, 2);
  EXPECT_EQ(cli({"experiment", "--n", "6..4", "--seed", "1"}).code, 2);
  EXPECT_EQ(cli({"check", path("missing.json")}).code, 2);
  EXPECT_EQ(cli({"--ordering", "sideways", "check", path("x.json")}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
  EXPECT_EQ(cli({"--version"}).code, 0);
  write("bad.json", "{\"n\": 1, \"matrix\": [[1, 0], [0");
  EXPECT_EQ(cli({"check", path("bad.json")}).code, 2);
}

TEST_F(CliTest, DomainErrors) {
  EXPECT_EQ(cli({"gen", "thermal", "--nu", "0.5"}).code, 1);
  EXPECT_EQ(cli({"dof", "--n", "0"}).code, 1);
  write("asym.json", R"({"n": 1, "matrix": [[2, 1], [0, 2]]})");
  EXPECT_EQ(cli({"check", path("asym.json")}).code, 1);
  write("small.json", R"({"n": 1, "matrix": [[0.5, 0], [0, 0.5]]})");
  EXPECT_EQ(cli({"check", path("small.json")}).code, 1);
  write("shape.json", R"({"n": 2, "matrix": [[1, 0], [0, 1]]})");
  EXPECT_EQ(cli({"check", path("shape.json")}).code, 1);
  const std::string t = path("t.json");
  ASSERT_EQ(cli({"gen", "thermal", "--nu", "2,1.5", "--out", t}).code, 0);
  EXPECT_EQ(cli({"schmidt", t, "--modes", "1"}).code, 1);
  EXPECT_EQ(cli({"standard-form", t, "--mode", "pure2"}).code, 1);
}

TEST_F(CliTest, BlockedOrderingIsConverted) {
  // Blocked (x1, x2, p1, p2) form of a thermal state with nu = (2, 3).
  write("b.json", R"({"n": 2, "ordering": "blocked",
                      "matrix": [[2,0,0,0],[0,3,0,0],[0,0,2,0],[0,0,0,3]]})");
  const CliRun r = cli({"spectrum", path("b.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["symplectic_eigenvalues"][0].get<double>(), 3.0, 1e-12);
  EXPECT_NEAR(j["symplectic_eigenvalues"][1].get<double>(), 2.0, 1e-12);

  write("u.json", R"({"n": 2, "matrix": [[2,0,0,0],[0,3,0,0],[0,0,2,0],[0,0,0,3]]})");
  const CliRun blocked = cli({"--ordering", "blocked", "spectrum", path("u.json")});
  EXPECT_EQ(blocked.out, r.out);
  EXPECT_EQ(cli({"--ordering", "interleaved", "spectrum", path("b.json")}).code, 2);
}

TEST_F(CliTest, WilliamsonAndBlocks) {
  const std::string s = path("s.json");
  ASSERT_EQ(cli({"gen", "tmss", "--r", "0.5", "--out", s}).code, 0);
  const Json w = Json::parse(cli({"williamson", s}).out);
  EXPECT_LE(w["reconstruction_residual"].get<double>(), 1e-12);
  EXPECT_NEAR(w["nu"][1].get<double>(), 1.0, 1e-12);
  const Json b = Json::parse(cli({"blocks", s}).out);
  EXPECT_NEAR(b["sigma_x"][0][1].get<double>(), std::sinh(0.5), 1e-14);
  EXPECT_NEAR(b["sigma_p"][0][1].get<double>(), -std::sinh(0.5), 1e-14);
  EXPECT_EQ(b["sigma_xp"][0][0].get<double>(), 0.0);
}

TEST_F(CliTest, EulerOfSqueezer) {
  write("z.json", R"({"n": 1, "matrix": [[0.5, 0], [0, 2]]})");
  const CliRun r = cli({"euler", path("z.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["z"][0].get<double>(), 2.0, 1e-12);
  EXPECT_LE(j["reconstruction_residual"].get<double>(), 1e-12);
  write("ns.json", R"({"n": 1, "matrix": [[2, 0], [0, 2]]})");
  EXPECT_EQ(cli({"euler", path("ns.json")}).code, 1);
}

TEST_F(CliTest, EngineerCircuitRoundTripAndSchmidt) {
  const std::string state = path("state.json"), circuit = path("c.json");
  const CliRun r = cli({"engineer", "--random", "--n", "4", "--seed", "9", "--out", state,
                     "--circuit-out", circuit});
  ASSERT_EQ(r.code, 0) << r.err;
  const Circuit c = circuit_from_json(parse_json(read_text_file(circuit), circuit));
  EXPECT_EQ(c.n, 4);
  EXPECT_EQ(circuit_to_json(c).dump(2) + "\n", read_text_file(circuit));

  const CliRun again = cli({"engineer", "--circuit", circuit});
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(again.out, read_text_file(state));
  EXPECT_EQ(cli({"check", state, "--pure"}).code, 0);

  const CliRun sf = cli({"schmidt", state, "--modes", "1,3"});
  ASSERT_EQ(sf.code, 0) << sf.err;
  const Json j = Json::parse(sf.out);
  double total = 0.0;
  for (const Json &ri : j["r"]) total += entropy_function(std::cosh(ri.get<double>()));
  EXPECT_NEAR(j["entropy"].get<double>(), total, 1e-8);
  EXPECT_EQ(cli({"schmidt", state, "--modes", "1,x"}).code, 2);
  EXPECT_EQ(cli({"schmidt", state, "--modes", "7"}).code, 1);
  EXPECT_EQ(cli({"engineer", "--random", "--n", "4", "--seed", "9", "--circuit", circuit}).code, 2);
}

TEST_F(CliTest, EngineerFromParams) {
  write("p.json", R"({"n": 2, "s": 1.4918246976412703, "r": [], "b": [], "c": []})");
  const CliRun r = cli({"engineer", "--params", path("p.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Matrix got = read_matrix_document(Json::parse(r.out));
  EXPECT_LE(max_abs(got - two_mode_squeezed(0.8).matrix()), 1e-12);
  write("q.json", R"({"n": 3, "s": 1.2, "r": [], "b": [0.1], "c": []})");
  EXPECT_EQ(cli({"engineer", "--params", path("q.json")}).code, 1);
}

TEST_F(CliTest, StandardFormModes) {
  const std::string state = path("state.json");
  ASSERT_EQ(cli({"engineer", "--random", "--n", "3", "--seed", "4", "--out", state}).code, 0);
  const Json p3 = Json::parse(cli({"standard-form", state, "--mode", "pure3"}).out);
  EXPECT_LE(p3["sigma_xp_norm"].get<double>(), 1e-7);
  const CliRun mixed = cli({"standard-form", state});
  ASSERT_EQ(mixed.code, 0) << mixed.err;
  EXPECT_EQ(Json::parse(mixed.out)["local_ops"].size(), 3u);

  const std::string s = path("s.json");
  ASSERT_EQ(cli({"gen", "tmss", "--r", "1.1", "--out", s}).code, 0);
  const Json p2 = Json::parse(cli({"standard-form", s, "--mode", "pure2"}).out);
  EXPECT_NEAR(p2["r"].get<double>(), 1.1, 1e-12);
  EXPECT_EQ(cli({"standard-form", s, "--mode", "pure9"}).code, 2);
}

TEST_F(CliTest, SampleMatchesExperimentStream) {
  const CliRun a = cli({"sample", "--n", "3", "--seed", "5", "--ensemble", "blockdiag"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(cli({"sample", "--n", "3", "--seed", "5", "--ensemble", "blockdiag"}).out, a.out);
  const CovarianceMatrix sigma(read_matrix_document(Json::parse(a.out)));
  EXPECT_NEAR(mean_energy(sigma), 15.0, 1e-9);
  EXPECT_EQ(cli({"sample", "--n", "3", "--seed", "5", "--energy", "1"}).code, 1);
}

TEST_F(CliTest, GlobalToleranceApplies) {
  // Slightly asymmetric input: rejected by default, accepted with a loose --tol.
  write("a.json", R"({"n": 1, "matrix": [[2, 1e-9], [0, 2]]})");
  EXPECT_EQ(cli({"check", path("a.json")}).code, 1);
  EXPECT_EQ(cli({"--tol", "1e-6", "check", path("a.json")}).code, 0);
  EXPECT_EQ(cli({"check", path("a.json"), "--tol", "1e-6"}).code, 0);
  EXPECT_EQ(cli({"--tol", "-1", "dof", "--n", "2"}).code, 2);
}

TEST_F(CliTest, ThreadEnvironmentDoesNotChangeOutput) {
  const std::vector<std::string> args{"experiment", "--n", "4,5", "--samples", "30",
                                      "--seed", "11", "--csv"};
  ::setenv("SYMPLECTICA_THREADS", "1", 1);
  const CliRun serial = cli(args);
  ::setenv("SYMPLECTICA_THREADS", "3", 1);
  const CliRun parallel = cli(args);
  ::setenv("SYMPLECTICA_THREADS", "many", 1);
  EXPECT_EQ(cli(args).code, 2);
  ::unsetenv("SYMPLECTICA_THREADS");
  ASSERT_EQ(serial.code, 0);
  EXPECT_EQ(parallel.out, serial.out);
}
