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

#include "nclp/functionals.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "nclp/errors.hpp"
#include "nclp/generators.hpp"
#include "nclp/random.hpp"
#include "test_util.hpp"

namespace nclp {
namespace {

using testing::diag;
using testing::state;

Complex unit_phase(double theta) { return std::exp(Complex(0.0, theta)); }

TEST(PositiveFunctionalTest, DiagonalState) {
  const PositiveFunctional psi = state({0.3, 0.7});
  EXPECT_ELEMENT_NEAR(psi.density(), diag({0.3, 0.7}), 0.0);
  EXPECT_NEAR(psi.mass(), 1.0, 1e-15);
  EXPECT_TRUE(psi.is_faithful());
}

TEST(PositiveFunctionalTest, ZeroFunctional) {
  const PositiveFunctional z = PositiveFunctional::zero(BlockAlgebra({2, 3}));
  EXPECT_TRUE(z.is_zero());
  EXPECT_FALSE(z.is_faithful());
  EXPECT_EQ(z.density().frobenius_norm(), 0.0);
  EXPECT_EQ(z.support().frobenius_norm(), 0.0);
}

TEST(PositiveFunctionalTest, MatrixUnitProbingRecoversDensity) {
  RandomStream rng(41, 0);
  const BlockAlgebra alg({2, 3});
  const PositiveFunctional psi = gen_positive_functional(rng, alg, RankProfile::full());
  for (int k = 0; k < alg.block_count(); ++k) {
    const int n = alg.block_dim(k);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Element e = Element::zero(alg);
        std::vector<Matrix> blocks = e.blocks();
        blocks[static_cast<std::size_t>(k)](j, i) = 1.0;  // psi(e_ji) = h_ij
        const Complex v = psi.evaluate(Element(alg, blocks));
        EXPECT_LE(std::abs(v - psi.density().block(k)(i, j)), 1e-12);
      }
    }
  }
}

TEST(PositiveFunctionalTest, RejectsIndefiniteDensity) {
  EXPECT_THROW(PositiveFunctional(diag({1.0, -0.5})), DomainError);
}

TEST(ScaleTest, Linearity) {
  const PositiveFunctional psi = state({0.25, 0.25});
  EXPECT_ELEMENT_NEAR(scale(psi, 1.0).density(), psi.density(), 0.0);
  EXPECT_TRUE(scale(psi, 0.0).is_zero());
  EXPECT_NEAR(scale(psi, 2.0).mass(), 1.0, 1e-15);
  EXPECT_THROW(scale(psi, -1.0), DomainError);
}

TEST(ConnesCocycleTest, SelfCocycleIsIdentity) {
  RandomStream rng(43, 0);
  const PositiveFunctional phi =
      gen_positive_functional(rng, BlockAlgebra({2, 3}), RankProfile::full());
  for (double t : {-2.0, 0.0, 0.5, 7.0}) {
    EXPECT_ELEMENT_NEAR(connes_cocycle(phi, phi, t), Element::identity(phi.algebra()), 1e-12);
  }
}

TEST(ConnesCocycleTest, CommutingDiagonals) {
  const Element u = connes_cocycle(state({0.5, 0.5}), state({1.0 / 3.0, 2.0 / 3.0}), 1.0);
  // (1/2)^{i} (1/3)^{-i} = exp(i ln 1.5); (1/2)^{i} (2/3)^{-i} = exp(i ln 0.75).
  EXPECT_LE(std::abs(u.block(0)(0, 0) - unit_phase(std::log(1.5))), 1e-15);
  EXPECT_LE(std::abs(u.block(0)(1, 1) - unit_phase(std::log(0.75))), 1e-15);
  EXPECT_EQ(u.block(0)(0, 1), Complex(0.0, 0.0));
}

TEST(ConnesCocycleTest, TimeZeroGivesSupport) {
  RandomStream rng(47, 0);
  const PositiveFunctional psi =
      gen_positive_functional(rng, BlockAlgebra({3}), RankProfile::deficient(1));
  const PositiveFunctional phi = gen_positive_functional(rng, BlockAlgebra({3}), RankProfile::full());
  EXPECT_ELEMENT_NEAR(connes_cocycle(psi, phi, 0.0), psi.support(), 1e-12);
}

TEST(ConnesCocycleTest, RequiresFaithfulReference) {
  EXPECT_THROW(connes_cocycle(state({0.5, 0.5}), state({1.0, 0.0}), 1.0), DomainError);
}

TEST(ConnesCocycleTest, GroupLawWithModularFlow) {
  RandomStream rng(53, 0);
  const BlockAlgebra alg({2, 3});
  const PositiveFunctional psi = gen_positive_functional(rng, alg, RankProfile::deficient(1));
  const PositiveFunctional phi = gen_positive_functional(rng, alg, RankProfile::full());
  const double t = 0.8;
  const double s = -1.9;
  const Element flow = phi.imaginary_power(t) * connes_cocycle(psi, phi, s) *
                       phi.imaginary_power(-t);
  EXPECT_ELEMENT_NEAR(connes_cocycle(psi, phi, t + s), connes_cocycle(psi, phi, t) * flow, 1e-10);
}

TEST(Lemma1CutTest, FaithfulWithZeroComplement) {
  RandomStream rng(59, 0);
  const BlockAlgebra alg({3});
  const PositiveFunctional psi = gen_positive_functional(rng, alg, RankProfile::full());
  const PositiveFunctional phi = gen_positive_functional(rng, alg, RankProfile::full());
  const CutSides cut = lemma1_cut(psi, PositiveFunctional::zero(alg), phi, 1.3);
  const Element u = connes_cocycle(psi, phi, 1.3);
  EXPECT_ELEMENT_NEAR(cut.lhs, u, 1e-12);
  EXPECT_ELEMENT_NEAR(cut.rhs, u, 1e-12);
}

TEST(Lemma1CutTest, CommutingDiagonals) {
  const CutSides cut = lemma1_cut(state({0.4, 0.0}), state({0.0, 0.6}), state({0.5, 0.5}), 1.0);
  const Complex expected = std::exp(Complex(0.0, std::log(0.8)));  // 0.8^{i}
  for (const Element* side : {&cut.lhs, &cut.rhs}) {
    EXPECT_LE(std::abs(side->block(0)(0, 0) - expected), 1e-15);
    EXPECT_LE(std::abs(side->block(0)(1, 1)), 1e-15);
  }
}

TEST(Lemma1CutTest, RandomPlantedComplement) {
  RandomStream rng(61, 0);
  const BlockAlgebra alg({2, 3});
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<int> ranks = {1, trial % 3};
    const ComplementaryPair pair = gen_complementary_pair(rng, alg, ranks, 0.05);
    const PositiveFunctional phi = gen_positive_functional(rng, alg, RankProfile::full());
    const CutSides cut = lemma1_cut(pair.psi, pair.complement, phi, rng.uniform(-4.0, 4.0));
    EXPECT_LE(distance(cut.lhs, cut.rhs), 1e-9);
  }
}

TEST(Lemma1CutTest, RejectsOverlappingSupports) {
  EXPECT_THROW(lemma1_cut(state({0.4, 0.1}), state({0.0, 0.6}), state({0.5, 0.5}), 1.0),
               PreconditionError);
  EXPECT_THROW(lemma1_cut(state({0.4, 0.0}), state({0.0, 0.0}), state({0.5, 0.5}), 1.0),
               PreconditionError);
}

}  // namespace
}  // namespace nclp
