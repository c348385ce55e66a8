// Copyright 2026 The nclp Authors
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

#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "nclp/generators.hpp"
#include "nclp/matrix_file.hpp"
#include "nclp/random.hpp"
#include "nclp/tensorprod.hpp"
#include "test_util.hpp"

namespace nclp::cli {
namespace {

namespace fs = std::filesystem;
using nclp::testing::diag;

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  CliResult r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double value_after(const std::string& text, const std::string& key) {
  const std::size_t at = text.find(key + "=");
  if (at == std::string::npos) return std::nan("");
  return std::stod(text.substr(at + key.size() + 1));
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("nclp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const Element& e,
                    MatrixKind kind = MatrixKind::kFunctional) {
    const fs::path path = dir_ / name;
    save_matrix_file(path, e, kind);
    return path.string();
  }
  std::string write_text(const std::string& name, const std::string& text) {
    const fs::path path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, IdenticalStatesGiveZeroDivergence) {
  const std::string psi = write("psi.json", diag({0.3, 0.7}));
  const CliResult r = run_cli({"divergence", "--kind", "sandwiched", "--alpha", "2", "--psi", psi,
                         "--phi", psi});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("D=0\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("Q=1\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, ClassicalPair) {
  const std::string psi = write("psi.json", diag({0.5, 0.5}));
  const std::string phi = write("phi.json", diag({1.0 / 3.0, 2.0 / 3.0}));
  const CliResult r = run_cli({"divergence", "--kind", "alpha-z", "--alpha", "2", "--z", "2", "--psi",
                         psi, "--phi", phi});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NEAR(value_after(r.out, "Q"), 1.125, 1e-11);
  EXPECT_NEAR(value_after(r.out, "D"), std::log(9.0 / 8.0), 1e-11);
}

TEST_F(CliTest, DivergenceJsonReport) {
  const std::string psi = write("psi.json", diag({0.5, 0.5}));
  const std::string phi = write("phi.json", diag({1.0 / 3.0, 2.0 / 3.0}));
  const CliResult r = run_cli({"divergence", "--kind", "alpha-z", "--alpha", "2", "--psi", psi,
                         "--phi", phi, "--json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["status"], "ok");
  EXPECT_EQ(j["results"][0]["Q"].get<double>(), 1.125);
  EXPECT_EQ(j["config"]["log_base"], "nat");
}

TEST_F(CliTest, InfiniteDivergenceIsSuccess) {
  const std::string psi = write("psi.json", diag({1.0, 0.0}));
  const std::string phi = write("phi.json", diag({0.0, 1.0}));
  const CliResult r = run_cli({"divergence", "--kind", "sandwiched", "--alpha", "2", "--psi", psi,
                         "--phi", phi});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("Q=inf reason=support_violation"), std::string::npos) << r.out;
  const CliResult j = run_cli({"divergence", "--kind", "sandwiched", "--alpha", "2", "--psi", psi,
                         "--phi", phi, "--json"});
  EXPECT_EQ(Json::parse(j.out)["results"][0]["Q"], "inf");
}

TEST_F(CliTest, PreconditionViolations) {
  const std::string zero = write("zero.json", diag({0.0, 0.0}));
  const std::string phi = write("phi.json", diag({0.5, 0.5}));
  EXPECT_EQ(run_cli({"divergence", "--alpha", "2", "--psi", zero, "--phi", phi}).code,
            kPrecondition);
  EXPECT_EQ(run_cli({"divergence", "--alpha", "1", "--psi", phi, "--phi", phi}).code,
            kPrecondition);
  const std::string other = write("other.json", diag({0.2, 0.3, 0.5}));
  EXPECT_EQ(run_cli({"divergence", "--alpha", "2", "--psi", other, "--phi", phi}).code,
            kPrecondition);
}

TEST_F(CliTest, MalformedInput) {
  const std::string bad = write_text("bad.json", "{\"algebra\": 3}");
  const std::string phi = write("phi.json", diag({0.5, 0.5}));
  const CliResult r = run_cli({"divergence", "--alpha", "2", "--psi", bad, "--phi", phi});
  EXPECT_EQ(r.code, kMalformed);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
  EXPECT_EQ(run_cli({"divergence", "--alpha", "2", "--psi", path("missing.json"), "--phi", phi})
                .code,
            kMalformed);
  EXPECT_EQ(run_cli({"divergence", "--alpha", "two", "--psi", phi, "--phi", phi}).code,
            kMalformed);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kMalformed);
}

TEST_F(CliTest, LpNorm) {
  const std::string x = write("x.json", diag({3.0, 4.0}), MatrixKind::kElement);
  const CliResult r = run_cli({"lp-norm", "--p", "2", "--x", x});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out, "norm=5\n");
  EXPECT_EQ(run_cli({"lp-norm", "--p", "inf", "--x", x}).out, "norm=4\n");
  EXPECT_EQ(run_cli({"lp-norm", "--p", "0", "--x", x}).code, kMalformed);
}

TEST_F(CliTest, KosakiEndpointIsL1) {
  RandomStream rng(3, 0);
  const PositiveFunctional phi = gen_positive_functional(rng, BlockAlgebra({2, 1}), RankProfile::full());
  const Element x = random_element(rng, phi.algebra());
  const std::string xf = write("x.json", x, MatrixKind::kElement);
  const std::string pf = write("phi.json", phi.density());
  const double kosaki = value_after(
      run_cli({"lp-norm", "--p", "1", "--x", xf, "--kosaki", "--phi", pf, "--eta", "0.3"}).out,
      "norm");
  const double plain = value_after(run_cli({"lp-norm", "--p", "1", "--x", xf}).out, "norm");
  EXPECT_NEAR(kosaki, plain, 1e-11 * plain);
}

TEST_F(CliTest, KosakiStateAgainstItself) {
  const std::string f = write("state.json", diag({0.2, 0.3, 0.5}));
  for (const char* p : {"1.5", "2", "4"}) {
    const CliResult r = run_cli({"lp-norm", "--p", p, "--x", f, "--kosaki", "--phi", f});
    EXPECT_EQ(r.out, "norm=1\n") << p;
  }
  EXPECT_EQ(run_cli({"lp-norm", "--p", "2", "--x", f, "--kosaki"}).code, kMalformed);
}

TEST_F(CliTest, TensorIdentity) {
  const std::string a = write("a.json", diag({1.0, 1.0}), MatrixKind::kElement);
  const std::string b = write("b.json", diag({1.0, 1.0, 1.0}), MatrixKind::kElement);
  const CliResult r = run_cli({"tensor", "--left", a, "--right", b, "-o", path("out.json")});
  ASSERT_EQ(r.code, kOk) << r.err;
  const MatrixFile f = load_matrix_file(path("out.json"));
  EXPECT_EQ(f.element.algebra().describe(), "6");
  EXPECT_EQ(distance(f.element, Element::identity(f.element.algebra())), 0.0);
}

TEST_F(CliTest, TensorDiagonal) {
  const std::string a = write("a.json", diag({1.0, 2.0}));
  const std::string b = write("b.json", diag({3.0}));
  ASSERT_EQ(run_cli({"tensor", "--left", a, "--right", b, "--out", path("out.json")}).code, kOk);
  const MatrixFile f = load_matrix_file(path("out.json"));
  EXPECT_EQ(f.kind, MatrixKind::kFunctional);
  EXPECT_EQ(distance(f.element, diag({3.0, 6.0})), 0.0);
}

TEST_F(CliTest, TensorRandomPairSatisfiesNormIdentity) {
  RandomStream rng(17, 0);
  const Element x = random_element(rng, BlockAlgebra({2, 3}));
  const Element y = random_element(rng, BlockAlgebra({2}));
  const std::string a = write("a.json", x, MatrixKind::kElement);
  const std::string b = write("b.json", y, MatrixKind::kElement);
  ASSERT_EQ(run_cli({"tensor", "--left", a, "--right", b, "-o", path("out.json")}).code, kOk);
  const Element xy = load_matrix_file(path("out.json")).element;
  const double lhs = lp_norm(xy, LpExponent(2.0));
  const double rhs = lp_norm(x, LpExponent(2.0)) * lp_norm(y, LpExponent(2.0));
  EXPECT_LE(std::abs(lhs - rhs), 1e-10 * rhs);
  EXPECT_EQ(distance(xy, kron_element(x, y)), 0.0);
}

TEST_F(CliTest, SuitePasses) {
  const CliResult r = run_cli({"suite", "--name", "theorem6", "--trials", "50", "--seed", "1", "--dims",
                         "2x2,3x2", "--out", path("report.json")});
  EXPECT_EQ(r.code, kOk) << r.out << r.err;
  const Json report = Json::parse(read_file(path("report.json")));
  EXPECT_EQ(report["status"], "ok");
  EXPECT_EQ(report["results"].size(), 50u);
  EXPECT_EQ(report["config"]["seed"], 1);
}

TEST_F(CliTest, SuiteUnknownName) {
  const CliResult r = run_cli({"suite", "--name", "nonsense"});
  EXPECT_EQ(r.code, kMalformed);
  EXPECT_NE(r.err.find("--name"), std::string::npos) << r.err;
}

TEST_F(CliTest, SuiteRerunIsByteIdentical) {
  const std::vector<std::string> base = {"suite", "--name", "prop11", "--trials", "20",
                                         "--seed", "5", "--dims", "2x2,3x2"};
  std::vector<std::string> first = base;
  first.insert(first.end(), {"--out", path("a.json"), "--threads", "1"});
  std::vector<std::string> second = base;
  second.insert(second.end(), {"--out", path("b.json"), "--threads", "3"});
  ASSERT_EQ(run_cli(first).code, kOk);
  ASSERT_EQ(run_cli(second).code, kOk);
  EXPECT_EQ(read_file(path("a.json")), read_file(path("b.json")));
  EXPECT_EQ(run_cli(base).out, read_file(path("a.json")));
}

TEST_F(CliTest, SuiteFailureExitCode) {
  const CliResult r = run_cli({"suite", "--name", "theorem6", "--trials", "4", "--tol-override",
                         "theorem6.relative=1e-300", "--out", path("r.json")});
  EXPECT_EQ(r.code, kSuiteFailed);
  EXPECT_EQ(Json::parse(read_file(path("r.json")))["status"], "fail");
  EXPECT_EQ(run_cli({"suite", "--name", "theorem6", "--tol-override", "nope=1"}).code, kMalformed);
}

TEST_F(CliTest, EpsRelFromEnvironmentAndFlag) {
  const std::string psi = write("psi.json", diag({0.5, 0.5}));
  ::setenv("NCLP_EPS_REL", "1e-9", 1);
  const Json env = Json::parse(
      run_cli({"divergence", "--alpha", "2", "--psi", psi, "--phi", psi, "--json"}).out);
  const Json flag = Json::parse(run_cli({"--eps-rel", "1e-6", "divergence", "--alpha", "2",
                                         "--psi", psi, "--phi", psi, "--json"})
                                    .out);
  ::unsetenv("NCLP_EPS_REL");
  EXPECT_EQ(env["config"]["eps_rel"].get<double>(), 1e-9);
  EXPECT_EQ(flag["config"]["eps_rel"].get<double>(), 1e-6);
}

TEST_F(CliTest, Version) {
  const CliResult r = run_cli({"--version"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_FALSE(r.out.empty());
}

}  // namespace
}  // namespace nclp::cli
