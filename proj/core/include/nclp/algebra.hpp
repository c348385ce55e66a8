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

// Finite-dimensional von Neumann algebras M = M_{n_1} (+) ... (+) M_{n_K}.
//
// Elements are stored block by block. The "carrier" is the Hilbert space
// C^{n_1} (+) ... (+) C^{n_K} on which M acts by block-diagonal matrices;
// the canonical trace is the plain matrix trace on the carrier.
//
// Functional calculus follows the kernel-killing convention: eigenvalues
// inside the kernel threshold are sent to the function's declared value at
// zero (0 for imaginary, fractional and negative powers), so h^{it} is the
// partial isometry supported on s(h) and h^{-r} is a support pseudo-inverse.

#ifndef NCLP_ALGEBRA_HPP_
#define NCLP_ALGEBRA_HPP_

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nclp/config.hpp"

namespace nclp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

class BlockAlgebra {
 public:
  // Throws DomainError when dims is empty or contains a non-positive entry.
  explicit BlockAlgebra(std::vector<int> block_dims);

  static BlockAlgebra full(int n) { return BlockAlgebra({n}); }

  std::span<const int> block_dims() const { return dims_; }
  int block_count() const { return static_cast<int>(dims_.size()); }
  int block_dim(int k) const { return dims_[static_cast<std::size_t>(k)]; }
  // D = sum n_k^2, the flat length of an element.
  int total_dim() const { return total_dim_; }
  // sum n_k, the size of the carrier space.
  int carrier_dim() const { return carrier_dim_; }
  // Offset of block k inside the carrier.
  int carrier_offset(int k) const { return offsets_[static_cast<std::size_t>(k)]; }

  // "2+3" style label.
  std::string describe() const;

  friend bool operator==(const BlockAlgebra& a, const BlockAlgebra& b) {
    return a.dims_ == b.dims_;
  }

 private:
  std::vector<int> dims_;
  std::vector<int> offsets_;
  int total_dim_ = 0;
  int carrier_dim_ = 0;
};

class Element {
 public:
  // Throws ShapeError when blocks do not conform to algebra.block_dims().
  Element(BlockAlgebra algebra, std::vector<Matrix> blocks);

  static Element zero(const BlockAlgebra& algebra);
  static Element identity(const BlockAlgebra& algebra);
  // Diagonal element; entries run over the carrier, block after block.
  static Element diagonal(const BlockAlgebra& algebra, std::span<const Complex> entries);
  static Element diagonal(const BlockAlgebra& algebra, std::span<const double> entries);
  // Block-diagonal compression of a carrier-sized matrix.
  static Element from_carrier(const BlockAlgebra& algebra, const Matrix& dense);
  // Inverse of flatten().
  static Element unflatten(const BlockAlgebra& algebra, const ComplexVector& flat);

  const BlockAlgebra& algebra() const { return algebra_; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  const Matrix& block(int k) const { return blocks_[static_cast<std::size_t>(k)]; }

  Element adjoint() const;
  // Block-diagonal carrier matrix.
  Matrix to_carrier() const;
  // Row-major concatenation of all blocks; length total_dim().
  ComplexVector flatten() const;
  double frobenius_norm() const;

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(Complex s);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, Complex s) { return a *= s; }
  friend Element operator*(Complex s, Element a) { return a *= s; }
  friend Element operator*(const Element& a, const Element& b);

 private:
  BlockAlgebra algebra_;
  std::vector<Matrix> blocks_;
};

// Blockwise product. Throws ShapeError on algebra mismatch.
Element multiply(const Element& x, const Element& y);

Complex canonical_trace(const Element& x);

// ||x - y||_F; throws ShapeError on algebra mismatch.
double distance(const Element& x, const Element& y);

struct HermitianSpectrum {
  BlockAlgebra algebra;
  // Per block, ascending.
  std::vector<RealVector> eigenvalues;
  // Per block; column i belongs to eigenvalues[k][i].
  std::vector<Matrix> eigenvectors;
  // |lambda| <= kernel_cutoff  <=>  kernel.
  double kernel_cutoff = 0.0;

  bool is_kernel(int block, int i) const;
  // Flattened over blocks in block order.
  std::vector<double> all_eigenvalues() const;
  std::vector<bool> kernel_mask() const;
  double max_abs_eigenvalue() const;
  double min_eigenvalue() const;
  int rank() const;
  // U Lambda U*.
  Element reconstruct() const;
};

// A scalar function for the functional calculus, with the value it takes on
// kernel eigenvalues.
struct ScalarFunction {
  std::function<Complex(double)> apply;
  Complex at_zero{0.0, 0.0};
  // Operand must be PSD; small negative eigenvalues are clipped first.
  bool nonnegative_domain = false;

  // f_t(lambda) = lambda^{it} on lambda > 0, 0 on the kernel.
  static ScalarFunction imaginary_power(double t);
  // lambda^r on lambda > 0, 0 on the kernel (any real r, including r <= 0).
  static ScalarFunction power(double r);
  // Indicator of the support.
  static ScalarFunction support_indicator();
};

// Eigendecomposition of a Hermitian element. Without `hermitize`, h must
// satisfy ||h - h*||_F <= 1e-8 max(1, ||h||_F) (else DomainError); in both
// cases (h + h*)/2 is what gets diagonalized.
HermitianSpectrum hermitian_eig(const Element& h, bool hermitize = false,
                                const NumericConfig& config = {});

// hermitian_eig plus PSD clipping: eigenvalues in [-1e-10 lambda_max, 0) are
// set to 0, anything below is a DomainError.
HermitianSpectrum psd_spectrum(const Element& h, const NumericConfig& config = {});

// The clipping step of psd_spectrum applied in place; recomputes the kernel
// cutoff. Returns true when some eigenvalue was changed.
bool clip_to_psd(HermitianSpectrum& spectrum, const NumericConfig& config = {});

// U f(Lambda) U*, kernel eigenvalues mapped to f.at_zero. Throws DomainError
// when f is non-finite on a non-kernel eigenvalue.
Element apply_function(const HermitianSpectrum& spectrum, const ScalarFunction& f);
Element func_calc(const Element& h, const ScalarFunction& f, const NumericConfig& config = {});

// h^r for PSD h under the kernel convention.
Element psd_power(const Element& h, double r, const NumericConfig& config = {});

Element support_projection(const Element& h, const NumericConfig& config = {});

struct PolarDecomposition {
  Element partial_isometry;  // v, with v*v = s(|x|)
  Element modulus;           // |x| = (x*x)^{1/2}
};

// x = v |x|. Singular values at or below eps_rel * sigma_max are treated as
// zero, so v is the canonical partial isometry x (x*x)^{-1/2} on s(|x|).
PolarDecomposition polar_decompose(const Element& x, const NumericConfig& config = {});

// All singular values of x, block after block (descending inside a block).
std::vector<double> singular_values(const Element& x);

}  // namespace nclp

#endif  // NCLP_ALGEBRA_HPP_
