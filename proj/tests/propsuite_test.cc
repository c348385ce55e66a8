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

#include "nclp/propsuite.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "nclp/errors.hpp"
#include "nclp/generators.hpp"
#include "nclp/json_writer.hpp"
#include "nclp/oracles.hpp"
#include "nclp/random.hpp"
#include "nclp/report.hpp"

namespace nclp {
namespace {

std::set<std::string> all_tags(const SuiteResult& result) {
  std::set<std::string> tags;
  for (const TrialReport& t : result.trials) tags.insert(t.tags.begin(), t.tags.end());
  return tags;
}

TEST(RandomStreamTest, SameKeySameDraws) {
  RandomStream a(7, 3);
  RandomStream b(7, 3);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  RandomStream c(7, 4);
  EXPECT_NE(RandomStream(7, 3).next_u64(), c.next_u64());
}

TEST(RandomStreamTest, UniformRange) {
  RandomStream rng(11, 0);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const int k = rng.uniform_int(2, 4);
    EXPECT_GE(k, 2);
    EXPECT_LE(k, 4);
  }
}

TEST(GeneratorTest, ZeroProfile) {
  RandomStream rng(1, 0);
  const PositiveFunctional f = gen_positive_functional(rng, BlockAlgebra({2, 3}), RankProfile::zero());
  EXPECT_TRUE(f.is_zero());
}

TEST(GeneratorTest, FullProfileIsFaithfulState) {
  RandomStream rng(2, 0);
  const PositiveFunctional f = gen_positive_functional(rng, BlockAlgebra({2, 3}), RankProfile::full());
  EXPECT_TRUE(f.is_faithful());
  EXPECT_NEAR(f.mass(), 1.0, 1e-14);
}

TEST(GeneratorTest, DeficientProfileHasExactRank) {
  RandomStream rng(3, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const PositiveFunctional f =
        gen_positive_functional(rng, BlockAlgebra({3}), RankProfile::deficient(1));
    EXPECT_EQ(f.spectrum().rank(), 1);
  }
  EXPECT_THROW(gen_positive_functional(rng, BlockAlgebra({2}), RankProfile::deficient(3)),
               DomainError);
}

TEST(GeneratorTest, ComplementaryPairHasOrthogonalSupports) {
  RandomStream rng(5, 0);
  const std::vector<int> ranks = {1, 2};
  const ComplementaryPair pair = gen_complementary_pair(rng, BlockAlgebra({2, 3}), ranks, 0.1);
  EXPECT_LE((pair.psi.support() * pair.complement.support()).frobenius_norm(), 1e-12);
  EXPECT_TRUE(add(pair.psi, pair.complement).is_faithful());
}

TEST(OracleTest, IdenticalDistributionsGiveMass) {
  const std::vector<double> p = {0.2, 0.3, 0.1};
  for (double alpha : {0.5, 2.0}) {
    const DivergenceValue q = classical_renyi_oracle(p, p, alpha);
    EXPECT_NEAR(q.value, 0.6, 1e-15);
  }
}

TEST(OracleTest, ExamplePair) {
  const std::vector<double> p = {0.5, 0.5};
  const std::vector<double> q = {1.0 / 3.0, 2.0 / 3.0};
  EXPECT_NEAR(classical_renyi_oracle(p, q, 2.0).value, 1.125, 1e-15);
  const std::vector<double> r = {1.0, 0.0};
  const std::vector<double> s = {0.0, 1.0};
  const DivergenceValue inf = classical_renyi_oracle(r, s, 2.0);
  EXPECT_EQ(inf.reason, DivergenceReason::kSupportViolation);
  EXPECT_EQ(classical_renyi_oracle(r, s, 0.5).value, 0.0);
}

TEST(OracleTest, NaiveProductMatchesEigen) {
  RandomStream rng(13, 0);
  const Matrix a = random_matrix(rng, 3, 4);
  const Matrix b = random_matrix(rng, 4, 2);
  EXPECT_LE((naive_product(a, b) - a * b).norm(), 1e-13);
}

TEST(DimsProfileTest, Parsing) {
  const DimsProfile single = parse_dims_profile("2+3");
  EXPECT_FALSE(single.is_tensor());
  EXPECT_EQ(single.combined().describe(), "2+3");
  const DimsProfile pair = parse_dims_profile("2+3x2");
  EXPECT_TRUE(pair.is_tensor());
  EXPECT_EQ(pair.left.describe(), "2+3");
  EXPECT_EQ(pair.combined().describe(), "4+6");
  EXPECT_EQ(parse_dims_profile("3").tensor().product().describe(), "9");
  EXPECT_EQ(parse_dims_list("2,3x2,2+2").size(), 3u);
  for (const char* bad : {"", "x2", "2x", "2++3", "0", "a", "2x3x4", "-1"}) {
    EXPECT_THROW(parse_dims_profile(bad), UsageError) << bad;
  }
}

TEST(SuiteConfigTest, UnknownSuite) {
  EXPECT_THROW(default_suite_config("lemma42"), UsageError);
}

TEST(SuiteConfigTest, EveryNamedSuiteHasDefaults) {
  for (std::string_view name : suite_names()) {
    const SuiteConfig c = default_suite_config(name);
    EXPECT_NO_THROW(validate(c)) << name;
    EXPECT_EQ(c.suite_name, name);
  }
}

TEST(SuiteConfigTest, ValidateRejectsEmptyRuns) {
  SuiteConfig c = default_suite_config("theorem6");
  c.trials = 0;
  EXPECT_THROW(validate(c), UsageError);
  c = default_suite_config("theorem6");
  c.dims.clear();
  EXPECT_THROW(validate(c), UsageError);
  c = default_suite_config("theorem6");
  c.tolerances.begin()->second = 0.0;
  EXPECT_THROW(validate(c), UsageError);
}

TEST(RunSuiteTest, SingleTrialIsReproducible) {
  SuiteConfig c = default_suite_config("theorem6");
  c.trials = 1;
  c.seed = 42;
  const std::string a = dump_json(suite_report(run_suite(c)));
  const std::string b = dump_json(suite_report(run_suite(c)));
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("\"status\": \"ok\""), std::string::npos);
}

TEST(RunSuiteTest, ThreadCountDoesNotChangeReport) {
  SuiteConfig c = default_suite_config("prop11");
  c.trials = 24;
  c.seed = 9;
  c.threads = 1;
  const std::string one = dump_json(suite_report(run_suite(c)));
  c.threads = 4;
  EXPECT_EQ(dump_json(suite_report(run_suite(c))), one);
}

TEST(RunSuiteTest, TrialsRoundRobinOverProfiles) {
  SuiteConfig c = default_suite_config("lemma3");
  c.trials = 6;
  c.dims = parse_dims_list("2,3");
  const SuiteResult r = run_suite(c);
  ASSERT_EQ(r.trials.size(), 6u);
  for (std::size_t t = 0; t < 6; ++t) {
    EXPECT_EQ(r.trials[t].trial_index, t);
    EXPECT_EQ(r.trials[t].dims, t % 2 == 0 ? "2" : "3");
    EXPECT_EQ(r.trials[t].fingerprint, RandomStream(c.seed, t).fingerprint());
  }
}

TEST(RunSuiteTest, Lemma9OnSmallDims) {
  SuiteConfig c = default_suite_config("lemma9");
  c.trials = 100;
  c.dims = parse_dims_list("2,3");
  const SuiteResult r = run_suite(c);
  EXPECT_EQ(r.failures, 0u);
  EXPECT_TRUE(all_tags(r).contains("reason:support_violation"));
}

TEST(RunSuiteTest, Prop11CoversEveryBranch) {
  const SuiteResult r = run_suite(default_suite_config("prop11"));
  EXPECT_EQ(r.failures, 0u);
  const std::set<std::string> tags = all_tags(r);
  for (const char* t : {"branch:finite", "branch:zero_product", "branch:infinite_asserted",
                        "branch:infinite_recorded", "reason:finite", "reason:support_violation",
                        "reason:zero_Q_alpha_lt_1", "reason:zero_reference"}) {
    EXPECT_TRUE(tags.contains(t)) << t;
  }
}

TEST(RunSuiteTest, ToleranceOverrideCanFailATrial) {
  SuiteConfig c = default_suite_config("theorem6");
  c.trials = 8;
  c.tolerances["theorem6.relative"] = 1e-300;
  const SuiteResult r = run_suite(c);
  EXPECT_GT(r.failures, 0u);
  EXPECT_NE(dump_json(suite_report(r)).find("\"status\": \"fail\""), std::string::npos);
}

TEST(RunSuiteTest, ReportEchoesConfiguration) {
  SuiteConfig c = default_suite_config("lemma1");
  c.trials = 2;
  c.seed = 77;
  c.numeric.eps_rel = 1e-11;
  const Json report = suite_report(run_suite(c));
  EXPECT_EQ(report["config"]["seed"], 77);
  EXPECT_EQ(report["config"]["trials"], 2);
  EXPECT_DOUBLE_EQ(report["config"]["eps_rel"].get<double>(), 1e-11);
  EXPECT_EQ(report["config"]["log_base"], "nat");
  EXPECT_TRUE(report["config"]["tolerances"].contains("lemma1.cut"));
  EXPECT_EQ(report["results"].size(), 2u);
  EXPECT_EQ(report["tool_version"], std::string(tool_version()));
}

}  // namespace
}  // namespace nclp
