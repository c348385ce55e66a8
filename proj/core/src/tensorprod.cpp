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

#include "nclp/tensorprod.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "nclp/errors.hpp"
#include "nclp/random.hpp"

namespace nclp {
namespace {

constexpr double kSpanThreshold = 1e-10;

std::vector<int> product_dims(const BlockAlgebra& left, const BlockAlgebra& right) {
  std::vector<int> dims;
  for (int n : left.block_dims())
    for (int m : right.block_dims()) dims.push_back(n * m);
  return dims;
}

Element random_element(const BlockAlgebra& algebra, RandomStream& rng) {
  std::vector<Matrix> blocks;
  for (int n : algebra.block_dims()) {
    Matrix b(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) b(r, c) = rng.complex_normal();
    blocks.push_back(std::move(b));
  }
  return Element(algebra, std::move(blocks));
}

}  // namespace

TensorAlgebra::TensorAlgebra(BlockAlgebra left, BlockAlgebra right)
    : left_(std::move(left)), right_(std::move(right)), product_(product_dims(left_, right_)) {
  for (int i = 0; i < left_.block_count(); ++i)
    for (int j = 0; j < right_.block_count(); ++j) index_map_.emplace_back(i, j);
}

Matrix kron(const Matrix& x, const Matrix& y) {
  const Eigen::Index m = y.rows();
  const Eigen::Index n = y.cols();
  Matrix out(x.rows() * m, x.cols() * n);
  for (Eigen::Index a = 0; a < x.rows(); ++a)
    for (Eigen::Index c = 0; c < x.cols(); ++c) out.block(a * m, c * n, m, n) = x(a, c) * y;
  return out;
}

Element kron_element(const TensorAlgebra& tensor, const Element& x, const Element& y) {
  if (!(x.algebra() == tensor.left()) || !(y.algebra() == tensor.right())) {
    throw ShapeError("kron_element: operands do not match the tensor algebra");
  }
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<std::size_t>(tensor.product().block_count()));
  for (int i = 0; i < tensor.left().block_count(); ++i)
    for (int j = 0; j < tensor.right().block_count(); ++j) blocks.push_back(kron(x.block(i), y.block(j)));
  return Element(tensor.product(), std::move(blocks));
}

Element kron_element(const Element& x, const Element& y) {
  return kron_element(TensorAlgebra(x.algebra(), y.algebra()), x, y);
}

PositiveFunctional kron_functional(const PositiveFunctional& psi1, const PositiveFunctional& psi2) {
  return PositiveFunctional(kron_element(psi1.density(), psi2.density()), psi1.config());
}

PolarFactorReport lemma5_polar(const Element& x, const Element& y, const NumericConfig& config) {
  const PolarDecomposition pxy = polar_decompose(kron_element(x, y), config);
  const PolarDecomposition px = polar_decompose(x, config);
  const PolarDecomposition py = polar_decompose(y, config);
  PolarFactorReport rep;
  rep.isometry_residual =
      distance(pxy.partial_isometry, kron_element(px.partial_isometry, py.partial_isometry));
  rep.modulus_residual = distance(pxy.modulus, kron_element(px.modulus, py.modulus));
  return rep;
}

double lemma5_power(const Element& x, const Element& y, double p, const NumericConfig& config) {
  const Element joint = psd_power(polar_decompose(kron_element(x, y), config).modulus, p, config);
  const Element factored = kron_element(psd_power(polar_decompose(x, config).modulus, p, config),
                                        psd_power(polar_decompose(y, config).modulus, p, config));
  return distance(joint, factored);
}

double multiplicative_calculus_residual(const Element& h1, const Element& h2,
                                        const ScalarFunction& f, const NumericConfig& config) {
  const Element joint = func_calc(kron_element(h1, h2), f, config);
  const Element factored = kron_element(func_calc(h1, f, config), func_calc(h2, f, config));
  return distance(joint, factored);
}

double lemma5_imaginary_power(const Element& h1, const Element& h2, double t,
                              const NumericConfig& config) {
  return multiplicative_calculus_residual(h1, h2, ScalarFunction::imaginary_power(t), config);
}

double spectral_product_residual(const Element& x, const Element& y) {
  const TensorAlgebra tensor(x.algebra(), y.algebra());
  const HermitianSpectrum sx = hermitian_eig(polar_decompose(x).modulus);
  const HermitianSpectrum sy = hermitian_eig(polar_decompose(y).modulus);
  const HermitianSpectrum sxy =
      hermitian_eig(kron_element(tensor, polar_decompose(x).modulus, polar_decompose(y).modulus));
  const double scale = std::max(sxy.max_abs_eigenvalue(), std::numeric_limits<double>::min());
  double worst = 0.0;
  for (int k = 0; k < tensor.product().block_count(); ++k) {
    const auto [i, j] = tensor.factor_blocks(k);
    std::vector<double> products;
    for (double a : sx.eigenvalues[static_cast<std::size_t>(i)])
      for (double b : sy.eigenvalues[static_cast<std::size_t>(j)]) products.push_back(a * b);
    std::sort(products.begin(), products.end());
    const RealVector& joint = sxy.eigenvalues[static_cast<std::size_t>(k)];
    for (std::size_t n = 0; n < products.size(); ++n) {
      worst = std::max(worst, std::abs(joint(static_cast<Eigen::Index>(n)) - products[n]) / scale);
    }
  }
  return worst;
}

double NormSides::relative_error() const {
  const double diff = std::abs(lhs - rhs);
  if (diff == 0.0) return 0.0;
  return diff / std::max(std::abs(rhs), std::numeric_limits<double>::min());
}

NormSides theorem6_norm(const Element& x, const Element& y, const LpExponent& p) {
  return {lp_norm(kron_element(x, y), p), lp_norm(x, p) * lp_norm(y, p)};
}

SpanningReport theorem6_spanning(const TensorAlgebra& tensor, int sample_budget,
                                 std::uint64_t seed) {
  const int dim = tensor.product().total_dim();
  if (sample_budget < dim) {
    throw DomainError("theorem6_spanning: sample budget must be at least D = " + std::to_string(dim));
  }
  RandomStream rng(seed, 0);
  Matrix samples(dim, sample_budget);
  for (int s = 0; s < sample_budget; ++s) {
    const Element x = random_element(tensor.left(), rng);
    const Element y = random_element(tensor.right(), rng);
    samples.col(s) = kron_element(tensor, x, y).flatten();
  }
  Eigen::JacobiSVD<Matrix> svd(samples);
  const RealVector& sv = svd.singularValues();
  SpanningReport rep;
  rep.dimension = dim;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rep.rank += sv(i) > kSpanThreshold * sv(0) ? 1 : 0;
  return rep;
}

NormSides corollary7_norm(const Element& x1, const Element& x2, const KosakiSpec& spec1,
                          const KosakiSpec& spec2) {
  const bool same_p = spec1.p().is_infinite() == spec2.p().is_infinite() &&
                      (spec1.p().is_infinite() || spec1.p().value() == spec2.p().value());
  if (!same_p || spec1.eta() != spec2.eta()) {
    throw PreconditionError("corollary7_norm: both specs must share p and eta");
  }
  const KosakiSpec joint(kron_functional(spec1.phi(), spec2.phi()), spec1.p(), spec1.eta());
  return {kosaki_norm(kron_element(x1, x2), joint), kosaki_norm(x1, spec1) * kosaki_norm(x2, spec2)};
}

}  // namespace nclp
