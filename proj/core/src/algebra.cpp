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

#include "nclp/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "nclp/errors.hpp"

namespace nclp {
namespace {

void require_same_algebra(const Element& x, const Element& y, const char* op) {
  if (!(x.algebra() == y.algebra())) {
    throw ShapeError(std::string(op) + ": algebra mismatch (" + x.algebra().describe() +
                     " vs " + y.algebra().describe() + ")");
  }
}

Element hermitian_part(const Element& h) {
  std::vector<Matrix> blocks;
  blocks.reserve(h.blocks().size());
  for (const Matrix& b : h.blocks()) blocks.emplace_back(0.5 * (b + b.adjoint()));
  return Element(h.algebra(), std::move(blocks));
}

}  // namespace

BlockAlgebra::BlockAlgebra(std::vector<int> block_dims) : dims_(std::move(block_dims)) {
  if (dims_.empty()) throw DomainError("BlockAlgebra: at least one block is required");
  offsets_.reserve(dims_.size());
  for (int n : dims_) {
    if (n < 1) throw DomainError("BlockAlgebra: block dimensions must be positive");
    offsets_.push_back(carrier_dim_);
    carrier_dim_ += n;
    total_dim_ += n * n;
  }
}

std::string BlockAlgebra::describe() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (k) os << '+';
    os << dims_[k];
  }
  return os.str();
}

Element::Element(BlockAlgebra algebra, std::vector<Matrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != algebra_.block_count()) {
    throw ShapeError("Element: expected " + std::to_string(algebra_.block_count()) +
                     " blocks, got " + std::to_string(blocks_.size()));
  }
  for (int k = 0; k < algebra_.block_count(); ++k) {
    const Matrix& b = blocks_[static_cast<std::size_t>(k)];
    const int n = algebra_.block_dim(k);
    if (b.rows() != n || b.cols() != n) {
      throw ShapeError("Element: block " + std::to_string(k) + " must be " + std::to_string(n) +
                       "x" + std::to_string(n));
    }
  }
}

Element Element::zero(const BlockAlgebra& algebra) {
  std::vector<Matrix> blocks;
  for (int n : algebra.block_dims()) blocks.emplace_back(Matrix::Zero(n, n));
  return Element(algebra, std::move(blocks));
}

Element Element::identity(const BlockAlgebra& algebra) {
  std::vector<Matrix> blocks;
  for (int n : algebra.block_dims()) blocks.emplace_back(Matrix::Identity(n, n));
  return Element(algebra, std::move(blocks));
}

Element Element::diagonal(const BlockAlgebra& algebra, std::span<const Complex> entries) {
  if (static_cast<int>(entries.size()) != algebra.carrier_dim()) {
    throw ShapeError("Element::diagonal: expected " + std::to_string(algebra.carrier_dim()) +
                     " entries");
  }
  std::vector<Matrix> blocks;
  std::size_t pos = 0;
  for (int n : algebra.block_dims()) {
    Matrix b = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) b(i, i) = entries[pos++];
    blocks.push_back(std::move(b));
  }
  return Element(algebra, std::move(blocks));
}

Element Element::diagonal(const BlockAlgebra& algebra, std::span<const double> entries) {
  std::vector<Complex> c(entries.begin(), entries.end());
  return diagonal(algebra, std::span<const Complex>(c));
}

Element Element::from_carrier(const BlockAlgebra& algebra, const Matrix& dense) {
  const int d = algebra.carrier_dim();
  if (dense.rows() != d || dense.cols() != d) {
    throw ShapeError("Element::from_carrier: expected a " + std::to_string(d) + "x" +
                     std::to_string(d) + " matrix");
  }
  std::vector<Matrix> blocks;
  for (int k = 0; k < algebra.block_count(); ++k) {
    const int off = algebra.carrier_offset(k);
    const int n = algebra.block_dim(k);
    blocks.emplace_back(dense.block(off, off, n, n));
  }
  return Element(algebra, std::move(blocks));
}

Element Element::unflatten(const BlockAlgebra& algebra, const ComplexVector& flat) {
  if (flat.size() != algebra.total_dim()) {
    throw ShapeError("Element::unflatten: expected length " + std::to_string(algebra.total_dim()));
  }
  std::vector<Matrix> blocks;
  Eigen::Index pos = 0;
  for (int n : algebra.block_dims()) {
    Matrix b(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) b(r, c) = flat(pos++);
    blocks.push_back(std::move(b));
  }
  return Element(algebra, std::move(blocks));
}

Element Element::adjoint() const {
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (const Matrix& b : blocks_) blocks.emplace_back(b.adjoint());
  return Element(algebra_, std::move(blocks));
}

Matrix Element::to_carrier() const {
  const int d = algebra_.carrier_dim();
  Matrix out = Matrix::Zero(d, d);
  for (int k = 0; k < algebra_.block_count(); ++k) {
    const int off = algebra_.carrier_offset(k);
    const int n = algebra_.block_dim(k);
    out.block(off, off, n, n) = block(k);
  }
  return out;
}

ComplexVector Element::flatten() const {
  ComplexVector flat(algebra_.total_dim());
  Eigen::Index pos = 0;
  for (const Matrix& b : blocks_) {
    for (Eigen::Index r = 0; r < b.rows(); ++r)
      for (Eigen::Index c = 0; c < b.cols(); ++c) flat(pos++) = b(r, c);
  }
  return flat;
}

double Element::frobenius_norm() const {
  double sq = 0.0;
  for (const Matrix& b : blocks_) sq += b.squaredNorm();
  return std::sqrt(sq);
}

Element& Element::operator+=(const Element& other) {
  require_same_algebra(*this, other, "add");
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += other.blocks_[k];
  return *this;
}

Element& Element::operator-=(const Element& other) {
  require_same_algebra(*this, other, "subtract");
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= other.blocks_[k];
  return *this;
}

Element& Element::operator*=(Complex s) {
  for (Matrix& b : blocks_) b *= s;
  return *this;
}

Element operator*(const Element& a, const Element& b) { return multiply(a, b); }

Element multiply(const Element& x, const Element& y) {
  require_same_algebra(x, y, "multiply");
  std::vector<Matrix> blocks;
  blocks.reserve(x.blocks().size());
  for (std::size_t k = 0; k < x.blocks().size(); ++k) {
    blocks.emplace_back(x.blocks()[k] * y.blocks()[k]);
  }
  return Element(x.algebra(), std::move(blocks));
}

Complex canonical_trace(const Element& x) {
  Complex tr{0.0, 0.0};
  for (const Matrix& b : x.blocks()) tr += b.trace();
  return tr;
}

double distance(const Element& x, const Element& y) { return (x - y).frobenius_norm(); }

bool HermitianSpectrum::is_kernel(int block, int i) const {
  return std::abs(eigenvalues[static_cast<std::size_t>(block)](i)) <= kernel_cutoff;
}

std::vector<double> HermitianSpectrum::all_eigenvalues() const {
  std::vector<double> out;
  for (const RealVector& ev : eigenvalues) out.insert(out.end(), ev.data(), ev.data() + ev.size());
  return out;
}

std::vector<bool> HermitianSpectrum::kernel_mask() const {
  std::vector<bool> out;
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    for (Eigen::Index i = 0; i < eigenvalues[k].size(); ++i) {
      out.push_back(is_kernel(static_cast<int>(k), static_cast<int>(i)));
    }
  }
  return out;
}

double HermitianSpectrum::max_abs_eigenvalue() const {
  double m = 0.0;
  for (const RealVector& ev : eigenvalues)
    if (ev.size() > 0) m = std::max(m, ev.cwiseAbs().maxCoeff());
  return m;
}

double HermitianSpectrum::min_eigenvalue() const {
  double m = std::numeric_limits<double>::infinity();
  for (const RealVector& ev : eigenvalues)
    if (ev.size() > 0) m = std::min(m, ev.minCoeff());
  return m;
}

int HermitianSpectrum::rank() const {
  int r = 0;
  for (bool k : kernel_mask()) r += k ? 0 : 1;
  return r;
}

Element HermitianSpectrum::reconstruct() const {
  std::vector<Matrix> blocks;
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    const Matrix& u = eigenvectors[k];
    blocks.emplace_back(u * eigenvalues[k].cast<Complex>().asDiagonal() * u.adjoint());
  }
  return Element(algebra, std::move(blocks));
}

ScalarFunction ScalarFunction::imaginary_power(double t) {
  ScalarFunction f;
  f.apply = [t](double lambda) { return std::exp(Complex(0.0, t * std::log(lambda))); };
  f.nonnegative_domain = true;
  return f;
}

ScalarFunction ScalarFunction::power(double r) {
  ScalarFunction f;
  f.apply = [r](double lambda) { return Complex(std::pow(lambda, r), 0.0); };
  f.nonnegative_domain = true;
  return f;
}

ScalarFunction ScalarFunction::support_indicator() {
  ScalarFunction f;
  f.apply = [](double) { return Complex(1.0, 0.0); };
  f.nonnegative_domain = true;
  return f;
}

HermitianSpectrum hermitian_eig(const Element& h, bool hermitize, const NumericConfig& config) {
  if (!hermitize) {
    const double skew = distance(h, h.adjoint());
    if (skew > kHermitianTolerance * std::max(1.0, h.frobenius_norm())) {
      throw DomainError("hermitian_eig: operand is not Hermitian (||h - h*||_F = " +
                        std::to_string(skew) + ")");
    }
  }
  const Element sym = hermitian_part(h);
  HermitianSpectrum s{h.algebra(), {}, {}, 0.0};
  for (const Matrix& b : sym.blocks()) {
    if (b.rows() == 1) {
      s.eigenvalues.emplace_back(RealVector::Constant(1, b(0, 0).real()));
      s.eigenvectors.emplace_back(Matrix::Identity(1, 1));
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(b);
    if (es.info() != Eigen::Success) throw DomainError("hermitian_eig: eigensolver did not converge");
    s.eigenvalues.push_back(es.eigenvalues());
    s.eigenvectors.push_back(es.eigenvectors());
  }
  s.kernel_cutoff = config.eps_rel * s.max_abs_eigenvalue();
  return s;
}

bool clip_to_psd(HermitianSpectrum& spectrum, const NumericConfig& config) {
  const double lmax = spectrum.max_abs_eigenvalue();
  bool clipped = false;
  for (RealVector& ev : spectrum.eigenvalues) {
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (ev(i) >= 0.0) continue;
      if (ev(i) < -kPsdClip * lmax) {
        throw DomainError("operand is not positive semidefinite (eigenvalue " +
                          std::to_string(ev(i)) + ")");
      }
      ev(i) = 0.0;
      clipped = true;
    }
  }
  spectrum.kernel_cutoff = config.eps_rel * spectrum.max_abs_eigenvalue();
  return clipped;
}

HermitianSpectrum psd_spectrum(const Element& h, const NumericConfig& config) {
  HermitianSpectrum s = hermitian_eig(h, false, config);
  clip_to_psd(s, config);
  return s;
}

Element apply_function(const HermitianSpectrum& spectrum, const ScalarFunction& f) {
  std::vector<Matrix> blocks;
  for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k) {
    const RealVector& ev = spectrum.eigenvalues[k];
    ComplexVector fv(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (spectrum.is_kernel(static_cast<int>(k), static_cast<int>(i))) {
        fv(i) = f.at_zero;
        continue;
      }
      if (f.nonnegative_domain && ev(i) < 0.0) {
        throw DomainError("func_calc: function undefined at negative eigenvalue " +
                          std::to_string(ev(i)));
      }
      fv(i) = f.apply(ev(i));
      if (!std::isfinite(fv(i).real()) || !std::isfinite(fv(i).imag())) {
        throw DomainError("func_calc: function undefined at eigenvalue " + std::to_string(ev(i)));
      }
    }
    const Matrix& u = spectrum.eigenvectors[k];
    blocks.emplace_back(u * fv.asDiagonal() * u.adjoint());
  }
  return Element(spectrum.algebra, std::move(blocks));
}

Element func_calc(const Element& h, const ScalarFunction& f, const NumericConfig& config) {
  const HermitianSpectrum s = f.nonnegative_domain ? psd_spectrum(h, config)
                                                   : hermitian_eig(h, false, config);
  return apply_function(s, f);
}

Element psd_power(const Element& h, double r, const NumericConfig& config) {
  return func_calc(h, ScalarFunction::power(r), config);
}

Element support_projection(const Element& h, const NumericConfig& config) {
  return func_calc(h, ScalarFunction::support_indicator(), config);
}

PolarDecomposition polar_decompose(const Element& x, const NumericConfig& config) {
  std::vector<Eigen::JacobiSVD<Matrix>> svds;
  double smax = 0.0;
  for (const Matrix& b : x.blocks()) {
    svds.emplace_back(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svds.back().singularValues().size() > 0) {
      smax = std::max(smax, svds.back().singularValues()(0));
    }
  }
  const double cutoff = config.eps_rel * smax;
  std::vector<Matrix> v_blocks;
  std::vector<Matrix> abs_blocks;
  for (const auto& svd : svds) {
    RealVector sigma = svd.singularValues();
    RealVector mask(sigma.size());
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
      const bool kernel = sigma(i) <= cutoff;
      mask(i) = kernel ? 0.0 : 1.0;
      if (kernel) sigma(i) = 0.0;
    }
    const Matrix& u = svd.matrixU();
    const Matrix& w = svd.matrixV();
    v_blocks.emplace_back(u * mask.cast<Complex>().asDiagonal() * w.adjoint());
    abs_blocks.emplace_back(w * sigma.cast<Complex>().asDiagonal() * w.adjoint());
  }
  return {Element(x.algebra(), std::move(v_blocks)), Element(x.algebra(), std::move(abs_blocks))};
}

std::vector<double> singular_values(const Element& x) {
  std::vector<double> out;
  for (const Matrix& b : x.blocks()) {
    Eigen::JacobiSVD<Matrix> svd(b);
    const RealVector& s = svd.singularValues();
    out.insert(out.end(), s.data(), s.data() + s.size());
  }
  return out;
}

}  // namespace nclp
