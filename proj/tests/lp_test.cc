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

#include "nclp/lp.hpp"

#include <cmath>
#include <limits>

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "nclp/errors.hpp"
#include "nclp/generators.hpp"
#include "nclp/random.hpp"
#include "test_util.hpp"

namespace nclp {
namespace {

using testing::diag;
using testing::diag_on;
using testing::state;

TEST(LpExponentTest, Parse) {
  EXPECT_TRUE(LpExponent::parse("inf").is_infinite());
  EXPECT_DOUBLE_EQ(LpExponent::parse("1.7").value(), 1.7);
  EXPECT_THROW(LpExponent::parse("abc"), UsageError);
  EXPECT_THROW(LpExponent::parse("-2"), UsageError);
  EXPECT_THROW(LpExponent(0.0), DomainError);
}

TEST(LpExponentTest, Dual) {
  EXPECT_TRUE(LpExponent(1.0).dual().is_infinite());
  EXPECT_DOUBLE_EQ(LpExponent(2.0).dual().value(), 2.0);
  EXPECT_DOUBLE_EQ(LpExponent(4.0).dual().value(), 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(LpExponent::infinity().dual().value(), 1.0);
}

TEST(LpNormTest, Pythagorean) { EXPECT_NEAR(lp_norm(diag({3.0, 4.0}), LpExponent(2.0)), 5.0, 1e-15); }

TEST(LpNormTest, TraceNormOfIdentity) {
  EXPECT_NEAR(lp_norm(Element::identity(BlockAlgebra({2, 3})), LpExponent(1.0)), 5.0, 1e-15);
}

TEST(LpNormTest, MatchesSingularValueSum) {
  RandomStream rng(67, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Element x = random_element(rng, BlockAlgebra({3}));
    const Eigen::VectorXd s = Eigen::JacobiSVD<Matrix>(x.block(0)).singularValues();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s(i), 1.7);
    const double expected = std::pow(acc, 1.0 / 1.7);
    EXPECT_NEAR(lp_norm(x, LpExponent(1.7)), expected, 1e-12 * expected);
  }
}

TEST(LpNormTest, InfinityIsLargestSingularValue) {
  EXPECT_DOUBLE_EQ(lp_norm(diag_on(BlockAlgebra({1, 2}), {-2.0, 7.0, 1.0}), LpExponent::infinity()),
                   7.0);
}

TEST(LpNormTest, QuasiNormIgnoresRoundingKernel) {
  // diag(1, 1e-20): the tiny entry sits below eps_rel * sigma_max.
  EXPECT_DOUBLE_EQ(lp_norm(diag({1.0, 1e-20}), LpExponent(0.5)), 1.0);
  EXPECT_NEAR(lp_norm(diag({1.0, 0.25}), LpExponent(0.5)), 2.25, 1e-15);
}

TEST(LpNormTest, LargeExponentDoesNotOverflow) {
  EXPECT_NEAR(lp_norm(diag({1e200, 1e200}), LpExponent(50.0)), 1e200 * std::pow(2.0, 1.0 / 50.0),
              1e186);
}

TEST(KosakiSpecTest, Preconditions) {
  const PositiveFunctional phi = state({0.5, 0.5});
  EXPECT_THROW(KosakiSpec(phi, LpExponent(0.5), 0.5), DomainError);
  EXPECT_THROW(KosakiSpec(phi, LpExponent(2.0), 1.5), DomainError);
  EXPECT_THROW(KosakiSpec(state({1.0, 0.0}), LpExponent(2.0), 0.5), ConditioningError);
}

TEST(KosakiEmbedTest, UnitMapsToDensity) {
  RandomStream rng(71, 0);
  const PositiveFunctional phi = gen_positive_functional(rng, BlockAlgebra({2, 3}), RankProfile::full());
  const KosakiSpec spec(phi, LpExponent(3.0), 0.3);
  EXPECT_ELEMENT_NEAR(kosaki_embed(Element::identity(phi.algebra()), spec), phi.density(), 1e-14);
}

TEST(KosakiEmbedTest, LeftCase) {
  RandomStream rng(73, 0);
  const PositiveFunctional phi = gen_positive_functional(rng, BlockAlgebra({3}), RankProfile::full());
  const Element a = random_element(rng, phi.algebra());
  EXPECT_ELEMENT_NEAR(kosaki_embed(a, KosakiSpec(phi, LpExponent(2.0), 0.0)), a * phi.density(),
                      1e-14);
}

TEST(KosakiEmbedTest, SymmetricSandwichOnDiagonalReference) {
  RandomStream rng(79, 0);
  const PositiveFunctional phi = state({1.0 / 3.0, 2.0 / 3.0});
  const Element a = random_element(rng, phi.algebra());
  Matrix expected = a.block(0);
  const double h[2] = {1.0 / 3.0, 2.0 / 3.0};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) expected(i, j) *= std::sqrt(h[i]) * std::sqrt(h[j]);
  EXPECT_LE((kosaki_embed(a, KosakiSpec(phi, LpExponent(2.0), 0.5)).block(0) - expected).norm(),
            1e-12);
}

TEST(KosakiMembershipTest, DensityMapsToRoot) {
  RandomStream rng(83, 0);
  const PositiveFunctional phi = gen_positive_functional(rng, BlockAlgebra({2, 2}), RankProfile::full());
  for (double p : {1.0, 1.5, 4.0}) {
    for (double eta : {0.0, 0.4, 1.0}) {
      const Element x = kosaki_membership(phi.density(), KosakiSpec(phi, LpExponent(p), eta));
      EXPECT_ELEMENT_NEAR(x, phi.power(1.0 / p), 1e-10);
    }
  }
}

TEST(KosakiMembershipTest, InfiniteExponentInvertsEmbedding) {
  RandomStream rng(89, 0);
  const PositiveFunctional phi = gen_positive_functional(rng, BlockAlgebra({3}), RankProfile::full());
  const Element a = random_element(rng, phi.algebra());
  const KosakiSpec spec(phi, LpExponent::infinity(), 0.25);
  EXPECT_LE(distance(kosaki_membership(kosaki_embed(a, spec), spec), a), 1e-9);
}

TEST(KosakiMembershipTest, RandomRecomposition) {
  RandomStream rng(97, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const PositiveFunctional phi =
        gen_positive_functional(rng, BlockAlgebra({2, 3}), RankProfile::full());
    const Element y = random_element(rng, phi.algebra());
    const KosakiSpec spec(phi, LpExponent(rng.uniform(1.0, 5.0)), rng.uniform());
    const Element x = kosaki_membership(y, spec);
    const double inv_q = 1.0 - spec.p().reciprocal();
    const Element back =
        phi.power(spec.eta() * inv_q) * x * phi.power((1.0 - spec.eta()) * inv_q);
    EXPECT_LE(distance(back, y), 1e-9 * (1.0 + y.frobenius_norm()));
  }
}

TEST(KosakiNormTest, MaximallyMixedStateHasUnitNorm) {
  const PositiveFunctional phi = state({0.5, 0.5});
  for (double p : {1.0, 1.5, 2.0, 7.0}) {
    for (double eta : {0.0, 0.25, 0.5, 1.0}) {
      EXPECT_NEAR(kosaki_norm(phi.density(), KosakiSpec(phi, LpExponent(p), eta)), 1.0, 1e-14);
    }
  }
  EXPECT_NEAR(kosaki_norm(phi.density(), KosakiSpec(phi, LpExponent::infinity(), 0.5)), 1.0,
              1e-14);
}

TEST(KosakiNormTest, EndpointOneIsTraceNorm) {
  RandomStream rng(101, 0);
  const PositiveFunctional phi = gen_positive_functional(rng, BlockAlgebra({3}), RankProfile::full());
  const Element y = random_element(rng, phi.algebra());
  EXPECT_NEAR(kosaki_norm(y, KosakiSpec(phi, LpExponent(1.0), 0.7)), lp_norm(y, LpExponent(1.0)),
              1e-12);
}

TEST(KosakiNormTest, ExplicitLeftCase) {
  const PositiveFunctional phi = state({1.0 / 3.0, 2.0 / 3.0});
  const KosakiSpec spec(phi, LpExponent(2.0), 0.0);
  const Element y = diag({1.0, 0.0}) * phi.density();
  EXPECT_NEAR(kosaki_norm(y, spec), std::sqrt(1.0 / 3.0), 1e-15);
}

TEST(InterpolationBoundTest, ExplicitEquality) {
  const BoundSides b =
      interpolation_bound_check(diag({1.0, 0.0}), KosakiSpec(state({1.0 / 3.0, 2.0 / 3.0}),
                                                              LpExponent(2.0), 0.0));
  EXPECT_NEAR(b.lhs, std::sqrt(1.0 / 3.0), 1e-15);
  EXPECT_NEAR(b.rhs, std::sqrt(1.0 / 3.0), 1e-15);
}

TEST(InterpolationBoundTest, UnitOperand) {
  RandomStream rng(103, 0);
  const PositiveFunctional phi = gen_positive_functional(rng, BlockAlgebra({2, 3}), RankProfile::full());
  const BoundSides b = interpolation_bound_check(Element::identity(phi.algebra()),
                                                 KosakiSpec(phi, LpExponent(3.0), 0.5));
  // Both sides reduce to phi(1)^{1/p}.
  EXPECT_NEAR(b.lhs, std::pow(phi.mass(), 1.0 / 3.0), 1e-12);
  EXPECT_NEAR(b.rhs, std::pow(phi.mass(), 1.0 / 3.0), 1e-12);
}

TEST(InterpolationBoundTest, RandomDraws) {
  RandomStream rng(107, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const BlockAlgebra alg(trial % 2 == 0 ? std::vector<int>{3} : std::vector<int>{2, 2});
    const PositiveFunctional phi = gen_positive_functional(rng, alg, RankProfile::full());
    const Element a = random_element(rng, alg);
    const KosakiSpec spec(phi, LpExponent(rng.uniform(1.0, 6.0)), rng.uniform());
    const BoundSides b = interpolation_bound_check(a, spec);
    EXPECT_LE(b.lhs, b.rhs * (1.0 + 1e-10));
  }
}

TEST(BijectivityTest, MaximallyMixed) {
  EXPECT_TRUE(lemma3_bijectivity(state({0.5, 0.5}), LpExponent(2.0)).bijective);
}

TEST(BijectivityTest, NearSingularIsFlagged) {
  const PositiveFunctional phi(diag({1.0, 1e-15}));
  const BijectivityReport rep = lemma3_bijectivity(phi, LpExponent(1.0));
  EXPECT_TRUE(rep.conditioning_flagged);
  EXPECT_FALSE(rep.bijective);
  EXPECT_TRUE(lemma3_bijectivity(phi, LpExponent(3.0)).conditioning_flagged);
}

TEST(BijectivityTest, RandomFaithfulOnDirectSum) {
  RandomStream rng(109, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const PositiveFunctional phi =
        gen_positive_functional(rng, BlockAlgebra({2, 3}), RankProfile::full());
    EXPECT_TRUE(lemma3_bijectivity(phi, LpExponent(3.0)).bijective);
  }
}

}  // namespace
}  // namespace nclp
