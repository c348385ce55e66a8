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

#include "nclp/generators.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "nclp/errors.hpp"

namespace nclp {
namespace {

PositiveFunctional normalized(Element h, bool normalize) {
  const double mass = canonical_trace(h).real();
  if (normalize && mass > 0.0) h *= Complex(1.0 / mass, 0.0);
  return PositiveFunctional(std::move(h));
}

}  // namespace

Matrix random_matrix(RandomStream& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = rng.complex_normal();
  return m;
}

Element random_element(RandomStream& rng, const BlockAlgebra& algebra) {
  std::vector<Matrix> blocks;
  for (int n : algebra.block_dims()) blocks.push_back(random_matrix(rng, n, n));
  return Element(algebra, std::move(blocks));
}

Matrix random_unitary(RandomStream& rng, int n) {
  const Matrix g = random_matrix(rng, n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

Element random_block_unitary(RandomStream& rng, const BlockAlgebra& algebra) {
  std::vector<Matrix> blocks;
  for (int n : algebra.block_dims()) blocks.push_back(random_unitary(rng, n));
  return Element(algebra, std::move(blocks));
}

PositiveFunctional gen_positive_functional(RandomStream& rng, const BlockAlgebra& algebra,
                                           RankProfile profile, bool normalize) {
  if (profile.kind == RankProfile::Kind::kZero) return PositiveFunctional::zero(algebra);
  std::vector<Matrix> blocks;
  for (int n : algebra.block_dims()) {
    int cols = n;
    if (profile.kind == RankProfile::Kind::kDeficient) {
      if (profile.rank < 0 || profile.rank > n) {
        throw DomainError("gen_positive_functional: rank exceeds a block dimension");
      }
      cols = profile.rank;
    }
    const Matrix g = random_matrix(rng, n, cols);
    blocks.emplace_back(g * g.adjoint());
  }
  return normalized(Element(algebra, std::move(blocks)), normalize);
}

PositiveFunctional gen_planted_functional(RandomStream& rng, const BlockAlgebra& algebra,
                                          std::span<const int> ranks, double floor,
                                          bool normalize) {
  if (static_cast<int>(ranks.size()) != algebra.block_count()) {
    throw ShapeError("gen_planted_functional: one rank per block is required");
  }
  std::vector<Matrix> blocks;
  for (int k = 0; k < algebra.block_count(); ++k) {
    const int n = algebra.block_dim(k);
    const int r = ranks[static_cast<std::size_t>(k)];
    if (r < 0 || r > n) throw DomainError("gen_planted_functional: rank out of range");
    const Matrix u = random_unitary(rng, n);
    ComplexVector lambda = ComplexVector::Zero(n);
    for (int i = 0; i < r; ++i) lambda(i) = rng.uniform(floor, 1.0);
    blocks.emplace_back(u.leftCols(r) * lambda.head(r).asDiagonal() * u.leftCols(r).adjoint());
  }
  return normalized(Element(algebra, std::move(blocks)), normalize);
}

ComplementaryPair gen_complementary_pair(RandomStream& rng, const BlockAlgebra& algebra,
                                         std::span<const int> ranks, double floor) {
  if (static_cast<int>(ranks.size()) != algebra.block_count()) {
    throw ShapeError("gen_complementary_pair: one rank per block is required");
  }
  std::vector<Matrix> first;
  std::vector<Matrix> second;
  for (int k = 0; k < algebra.block_count(); ++k) {
    const int n = algebra.block_dim(k);
    const int r = ranks[static_cast<std::size_t>(k)];
    if (r < 0 || r > n) throw DomainError("gen_complementary_pair: rank out of range");
    const Matrix u = random_unitary(rng, n);
    ComplexVector lambda(n);
    for (int i = 0; i < n; ++i) lambda(i) = rng.uniform(floor, 1.0);
    first.emplace_back(u.leftCols(r) * lambda.head(r).asDiagonal() * u.leftCols(r).adjoint());
    second.emplace_back(u.rightCols(n - r) * lambda.tail(n - r).asDiagonal() *
                        u.rightCols(n - r).adjoint());
  }
  return {PositiveFunctional(Element(algebra, std::move(first))),
          PositiveFunctional(Element(algebra, std::move(second)))};
}

PositiveFunctional gen_diagonal_functional(RandomStream& rng, const BlockAlgebra& algebra,
                                           double zero_prob, bool normalize) {
  std::vector<double> diag(static_cast<std::size_t>(algebra.carrier_dim()));
  bool any = false;
  for (double& d : diag) {
    d = rng.uniform() < zero_prob ? 0.0 : 1.0 - rng.uniform();
    any = any || d > 0.0;
  }
  if (!any) diag[static_cast<std::size_t>(rng.uniform_int(0, algebra.carrier_dim() - 1))] = 1.0;
  return normalized(Element::diagonal(algebra, std::span<const double>(diag)), normalize);
}

QuantumChannelPre gen_unital_channel(RandomStream& rng, int from_dim, const BlockAlgebra& to,
                                     int kraus_count) {
  const int n = to.carrier_dim();
  std::vector<Matrix> g;
  Matrix s = Matrix::Zero(n, n);
  for (int i = 0; i < kraus_count; ++i) {
    g.push_back(random_matrix(rng, from_dim, n));
    s += g.back().adjoint() * g.back();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (s + s.adjoint()));
  const Matrix inv_sqrt = es.eigenvectors() *
                          es.eigenvalues().cwiseInverse().cwiseSqrt().cast<Complex>().asDiagonal() *
                          es.eigenvectors().adjoint();
  std::vector<Matrix> ops;
  for (const Matrix& gi : g) ops.emplace_back(gi * inv_sqrt);
  return QuantumChannelPre(BlockAlgebra::full(from_dim), to, std::move(ops));
}

}  // namespace nclp
