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

// Tensor products of block algebras, elements and functionals.
//
// (M_1 (+) ... ) (x) (N_1 (+) ...) = (+)_{i,j} M_{n_i m_j}, with product
// blocks in left-major order: pair (i, j) sits at index i * K_right + j.
// Inside a block the Kronecker convention is row-major:
//   (x (x) y)[(a, b), (c, d)] = x[a, c] y[b, d],  row index a * m + b.

#ifndef NCLP_TENSORPROD_HPP_
#define NCLP_TENSORPROD_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "nclp/algebra.hpp"
#include "nclp/functionals.hpp"
#include "nclp/lp.hpp"

namespace nclp {

class TensorAlgebra {
 public:
  TensorAlgebra(BlockAlgebra left, BlockAlgebra right);

  const BlockAlgebra& left() const { return left_; }
  const BlockAlgebra& right() const { return right_; }
  const BlockAlgebra& product() const { return product_; }

  int product_block(int i, int j) const { return i * right_.block_count() + j; }
  // Inverse of product_block.
  std::pair<int, int> factor_blocks(int k) const { return index_map_[static_cast<std::size_t>(k)]; }

 private:
  BlockAlgebra left_;
  BlockAlgebra right_;
  BlockAlgebra product_;
  std::vector<std::pair<int, int>> index_map_;
};

Matrix kron(const Matrix& x, const Matrix& y);

// Throws ShapeError when x, y do not live on tensor.left(), tensor.right().
Element kron_element(const TensorAlgebra& tensor, const Element& x, const Element& y);
Element kron_element(const Element& x, const Element& y);

PositiveFunctional kron_functional(const PositiveFunctional& psi1, const PositiveFunctional& psi2);

struct PolarFactorReport {
  double isometry_residual = 0.0;  // ||v(x(x)y) - v(x)(x)v(y)||_F
  double modulus_residual = 0.0;   // || |x(x)y| - |x|(x)|y| ||_F
};

PolarFactorReport lemma5_polar(const Element& x, const Element& y, const NumericConfig& config = {});

// || |x(x)y|^p - |x|^p (x) |y|^p ||_F.
double lemma5_power(const Element& x, const Element& y, double p, const NumericConfig& config = {});

// || f(h1 (x) h2) - f(h1) (x) f(h2) ||_F for PSD h1, h2 and multiplicative f.
double multiplicative_calculus_residual(const Element& h1, const Element& h2,
                                        const ScalarFunction& f, const NumericConfig& config = {});

// || (h1 (x) h2)^{it} - h1^{it} (x) h2^{it} ||_F.
double lemma5_imaginary_power(const Element& h1, const Element& h2, double t,
                              const NumericConfig& config = {});

// Largest gap between the sorted eigenvalues of |x| (x) |y| and the sorted
// pairwise products of eigenvalues of |x| and |y|, per product block,
// relative to the largest eigenvalue.
double spectral_product_residual(const Element& x, const Element& y);

struct NormSides {
  double lhs = 0.0;
  double rhs = 0.0;
  double relative_error() const;
};

// lhs = ||x (x) y||_p, rhs = ||x||_p ||y||_p.
NormSides theorem6_norm(const Element& x, const Element& y, const LpExponent& p);

struct SpanningReport {
  int rank = 0;
  int dimension = 0;
  bool spans() const { return rank == dimension; }
};

// Rank of sample_budget random simple tensors x (x) y, as vectors of the
// product carrier. Throws DomainError when sample_budget < D.
SpanningReport theorem6_spanning(const TensorAlgebra& tensor, int sample_budget, std::uint64_t seed);

// lhs = ||x1 (x) x2||_{p, phi1 (x) phi2, eta}, rhs = product of the factor
// norms. Throws PreconditionError when the specs differ in p or eta.
NormSides corollary7_norm(const Element& x1, const Element& x2, const KosakiSpec& spec1,
                          const KosakiSpec& spec2);

}  // namespace nclp

#endif  // NCLP_TENSORPROD_HPP_
