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
#include <utility>

#include "nclp/errors.hpp"

namespace nclp {
namespace {

constexpr double kSupportTolerance = 1e-8;

}  // namespace

PositiveFunctional::PositiveFunctional(Element density, const NumericConfig& config)
    : density_(std::move(density)),
      spectrum_(hermitian_eig(density_, false, config)),
      config_(config) {
  // Keep the symmetrized density unless clipping moved an eigenvalue, in
  // which case the clipped spectrum defines it.
  if (clip_to_psd(spectrum_, config)) {
    density_ = spectrum_.reconstruct();
  } else {
    std::vector<Matrix> blocks;
    for (const Matrix& b : density_.blocks()) blocks.emplace_back(0.5 * (b + b.adjoint()));
    density_ = Element(density_.algebra(), std::move(blocks));
  }
}

PositiveFunctional PositiveFunctional::zero(const BlockAlgebra& algebra) {
  return PositiveFunctional(Element::zero(algebra));
}

double PositiveFunctional::mass() const { return canonical_trace(density_).real(); }

Complex PositiveFunctional::evaluate(const Element& a) const {
  return canonical_trace(multiply(density_, a));
}

bool PositiveFunctional::is_faithful() const {
  if (is_zero()) return false;
  for (bool k : spectrum_.kernel_mask())
    if (k) return false;
  return true;
}

bool PositiveFunctional::is_zero() const { return spectrum_.max_abs_eigenvalue() == 0.0; }

Element PositiveFunctional::support() const {
  return apply_function(spectrum_, ScalarFunction::support_indicator());
}

Element PositiveFunctional::power(double r) const {
  return apply_function(spectrum_, ScalarFunction::power(r));
}

Element PositiveFunctional::imaginary_power(double t) const {
  return apply_function(spectrum_, ScalarFunction::imaginary_power(t));
}

PositiveFunctional scale(const PositiveFunctional& psi, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw DomainError("scale: factor must be a finite nonnegative real");
  }
  return PositiveFunctional(psi.density() * Complex(lambda, 0.0), psi.config());
}

PositiveFunctional add(const PositiveFunctional& psi, const PositiveFunctional& other) {
  return PositiveFunctional(psi.density() + other.density(), psi.config());
}

Element connes_cocycle(const PositiveFunctional& psi, const PositiveFunctional& phi, double t) {
  if (!(psi.algebra() == phi.algebra())) throw ShapeError("connes_cocycle: algebra mismatch");
  if (!phi.is_faithful()) {
    throw DomainError("connes_cocycle: reference functional must be faithful");
  }
  return multiply(psi.imaginary_power(t), phi.imaginary_power(-t));
}

CutSides lemma1_cut(const PositiveFunctional& psi, const PositiveFunctional& complement,
                    const PositiveFunctional& phi, double t) {
  if (!(psi.algebra() == complement.algebra()) || !(psi.algebra() == phi.algebra())) {
    throw ShapeError("lemma1_cut: algebra mismatch");
  }
  const Element s = psi.support();
  const Element s_c = complement.support();
  const double sum_gap = distance(s + s_c, Element::identity(psi.algebra()));
  const double overlap = multiply(s, s_c).frobenius_norm();
  if (sum_gap > kSupportTolerance || overlap > kSupportTolerance) {
    throw PreconditionError("lemma1_cut: supports must be complementary (||s+s'-1||_F = " +
                            std::to_string(sum_gap) + ", ||s s'||_F = " +
                            std::to_string(overlap) + ")");
  }
  const PositiveFunctional chi = add(psi, complement);
  return {connes_cocycle(psi, phi, t), multiply(s, connes_cocycle(chi, phi, t))};
}

}  // namespace nclp
