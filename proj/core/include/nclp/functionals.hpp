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

// Normal positive functionals psi(a) = tr(h_psi a) and their Connes cocycles.

#ifndef NCLP_FUNCTIONALS_HPP_
#define NCLP_FUNCTIONALS_HPP_

#include <utility>

#include "nclp/algebra.hpp"

namespace nclp {

// Immutable. The density is validated (Hermitian within tolerance, PSD after
// clipping) on construction and its spectrum is kept alongside it.
class PositiveFunctional {
 public:
  // Throws DomainError when the density is not PSD.
  explicit PositiveFunctional(Element density, const NumericConfig& config = {});

  static PositiveFunctional zero(const BlockAlgebra& algebra);

  const BlockAlgebra& algebra() const { return density_.algebra(); }
  const Element& density() const { return density_; }
  const HermitianSpectrum& spectrum() const { return spectrum_; }
  const NumericConfig& config() const { return config_; }

  // psi(1) = tr(h_psi).
  double mass() const;
  Complex evaluate(const Element& a) const;
  bool is_faithful() const;
  bool is_zero() const;
  Element support() const;
  // h_psi^r (kernel convention), computed from the cached spectrum.
  Element power(double r) const;
  // h_psi^{it}.
  Element imaginary_power(double t) const;

 private:
  Element density_;
  HermitianSpectrum spectrum_;
  NumericConfig config_;
};

// The density h_psi of psi with respect to the canonical trace.
inline const Element& haagerup_density(const PositiveFunctional& psi) { return psi.density(); }

// Throws DomainError when lambda < 0.
PositiveFunctional scale(const PositiveFunctional& psi, double lambda);

// psi + psi'. Throws ShapeError on algebra mismatch.
PositiveFunctional add(const PositiveFunctional& psi, const PositiveFunctional& other);

// [D psi : D phi]_t = h_psi^{it} h_phi^{-it}. Throws DomainError when phi is
// not faithful.
Element connes_cocycle(const PositiveFunctional& psi, const PositiveFunctional& phi, double t);

struct CutSides {
  Element lhs;  // [D psi : D phi]_t
  Element rhs;  // s(psi) [D chi : D phi]_t with chi = psi + psi'
};

// Both sides of the support-cut identity. Requires s(psi) + s(psi') = 1 and
// s(psi) s(psi') = 0 within 1e-8 (else PreconditionError) and phi faithful.
CutSides lemma1_cut(const PositiveFunctional& psi, const PositiveFunctional& complement,
                    const PositiveFunctional& phi, double t);

}  // namespace nclp

#endif  // NCLP_FUNCTIONALS_HPP_
