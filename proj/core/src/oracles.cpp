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

#include "nclp/oracles.hpp"

#include <cmath>
#include <limits>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "nclp/errors.hpp"
#include "nclp/tensorprod.hpp"

namespace nclp {

DivergenceValue classical_renyi_oracle(std::span<const double> p, std::span<const double> q,
                                       double alpha) {
  if (p.size() != q.size()) throw DomainError("classical_renyi_oracle: length mismatch");
  bool nonzero = false;
  for (double v : p) nonzero = nonzero || v > 0.0;
  if (!nonzero) throw DomainError("classical_renyi_oracle: p must be nonzero");
  long double sum = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) {
      if (alpha > 1.0) return DivergenceValue::infinite(DivergenceReason::kSupportViolation);
      continue;
    }
    sum += std::pow(static_cast<long double>(p[i]), static_cast<long double>(alpha)) *
           std::pow(static_cast<long double>(q[i]), static_cast<long double>(1.0 - alpha));
  }
  return DivergenceValue::finite(static_cast<double>(sum));
}

Element spade_least_squares(const PositiveFunctional& psi, const PositiveFunctional& phi,
                            double alpha, double z) {
  const BlockAlgebra& alg = phi.algebra();
  const Element a_el = phi.power((alpha - 1.0) / (2.0 * z));
  const Element b_el = psi.power(alpha / z);
  double sigma_max = 0.0;
  for (const Matrix& h : phi.density().blocks()) {
    if (h.size() == 0) continue;
    sigma_max = std::max(sigma_max, Eigen::JacobiSVD<Matrix>(h).singularValues()(0));
  }
  const double cutoff = phi.config().eps_rel * sigma_max;

  std::vector<Matrix> out;
  for (int k = 0; k < alg.block_count(); ++k) {
    const int n = alg.block_dim(k);
    const Matrix& h = phi.density().block(k);
    Eigen::JacobiSVD<Matrix> svd(h, Eigen::ComputeFullU);
    int r = 0;
    while (r < n && svd.singularValues()(r) > cutoff) ++r;
    if (r == 0) {
      out.push_back(Matrix::Zero(n, n));
      continue;
    }
    const Matrix w = svd.matrixU().leftCols(r);
    const Matrix& a = a_el.block(k);
    const Matrix left = a * w;               // n x r
    const Matrix right = w.adjoint() * a;    // r x n
    // Column-stacked vec: vec(L Y R) = (R^T (x) L) vec(Y).
    const Matrix system = kron(right.transpose(), left);
    const Matrix& b = b_el.block(k);
    const ComplexVector rhs = Eigen::Map<const ComplexVector>(b.data(), b.size());
    const ComplexVector y = system.completeOrthogonalDecomposition().solve(rhs);
    const Matrix ym = Eigen::Map<const Matrix>(y.data(), r, r);
    out.push_back(w * ym * w.adjoint());
  }
  return Element(alg, std::move(out));
}

Matrix naive_product(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("naive_product: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      Complex acc(0.0, 0.0);
      for (Eigen::Index k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  }
  return c;
}

}  // namespace nclp
