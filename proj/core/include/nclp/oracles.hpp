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

// Reference computations that avoid the main code paths. Used by the
// property suites and the tests to cross-check results.

#ifndef NCLP_ORACLES_HPP_
#define NCLP_ORACLES_HPP_

#include <span>

#include "nclp/algebra.hpp"
#include "nclp/divergence.hpp"
#include "nclp/functionals.hpp"

namespace nclp {

// Q = sum_i p_i^alpha q_i^(1 - alpha) over commuting (diagonal) densities.
// Terms with p_i = 0 contribute 0. For alpha > 1, p_i > 0 with q_i = 0
// yields +inf (support_violation). Throws DomainError when p is zero or
// the inputs have different lengths.
DivergenceValue classical_renyi_oracle(std::span<const double> p, std::span<const double> q,
                                       double alpha);

// Solves A X A = B with A = phi^((alpha-1)/2z), B = psi^(alpha/z) by dense
// least squares on an orthonormal basis W of the range of h_phi:
// X = W Y W*, where (W* A)^T (x) (A W) vec(Y) = vec(B).
Element spade_least_squares(const PositiveFunctional& psi, const PositiveFunctional& phi,
                            double alpha, double z);

// Row-by-column triple loop.
Matrix naive_product(const Matrix& a, const Matrix& b);

}  // namespace nclp

#endif  // NCLP_ORACLES_HPP_
