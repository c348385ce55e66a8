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

// Seeded random instances for the property suites.

#ifndef NCLP_GENERATORS_HPP_
#define NCLP_GENERATORS_HPP_

#include <span>
#include <vector>

#include "nclp/algebra.hpp"
#include "nclp/divergence.hpp"
#include "nclp/functionals.hpp"
#include "nclp/random.hpp"

namespace nclp {

struct RankProfile {
  enum class Kind { kFull, kDeficient, kZero };
  Kind kind = Kind::kFull;
  int rank = 0;

  static RankProfile full() { return {Kind::kFull, 0}; }
  // Rank r in every block; requires r <= every block dimension.
  static RankProfile deficient(int r) { return {Kind::kDeficient, r}; }
  static RankProfile zero() { return {Kind::kZero, 0}; }
};

// Complex Gaussian entries, E|x_ij|^2 = 1.
Element random_element(RandomStream& rng, const BlockAlgebra& algebra);
Matrix random_matrix(RandomStream& rng, int rows, int cols);
// QR of a Gaussian matrix with the phases of diag(R) absorbed.
Matrix random_unitary(RandomStream& rng, int n);
Element random_block_unitary(RandomStream& rng, const BlockAlgebra& algebra);

// full:         h = G G*, G square Gaussian per block.
// deficient(r): h = G G*, G an n x r Gaussian factor per block.
// zero:         h = 0.
// Normalized to mass 1 unless `normalize` is false (zero stays zero).
PositiveFunctional gen_positive_functional(RandomStream& rng, const BlockAlgebra& algebra,
                                           RankProfile profile, bool normalize = true);

// Density U diag(lambda) U* with, in block k, ranks[k] eigenvalues uniform in
// [floor, 1] and the rest exactly zero; U a random block unitary. Normalized
// to mass 1 unless every rank is zero or `normalize` is false.
PositiveFunctional gen_planted_functional(RandomStream& rng, const BlockAlgebra& algebra,
                                          std::span<const int> ranks, double floor,
                                          bool normalize = true);

struct ComplementaryPair {
  PositiveFunctional psi;
  PositiveFunctional complement;  // s(complement) = 1 - s(psi)
};

// Shared eigenbasis; psi takes the first ranks[k] eigenvectors of block k and
// the complement the remaining ones. Eigenvalues uniform in [floor, 1].
ComplementaryPair gen_complementary_pair(RandomStream& rng, const BlockAlgebra& algebra,
                                         std::span<const int> ranks, double floor);

// Exactly diagonal density; each entry is zero with probability zero_prob,
// otherwise uniform in (0, 1]. At least one entry is nonzero.
PositiveFunctional gen_diagonal_functional(RandomStream& rng, const BlockAlgebra& algebra,
                                           double zero_prob, bool normalize = true);

// Random unital CP map from M_{from_dim} into `to`: V_i = G_i S^{-1/2} with
// S = sum G_i* G_i.
QuantumChannelPre gen_unital_channel(RandomStream& rng, int from_dim, const BlockAlgebra& to,
                                     int kraus_count);

}  // namespace nclp

#endif  // NCLP_GENERATORS_HPP_
