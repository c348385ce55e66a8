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

#ifndef NCLP_CONFIG_HPP_
#define NCLP_CONFIG_HPP_

namespace nclp {

// Relative tolerance for treating an operand as Hermitian:
// ||h - h*||_F <= kHermitianTolerance * max(1, ||h||_F).
inline constexpr double kHermitianTolerance = 1e-8;

// Eigenvalues of a PSD-expected operand in [-kPsdClip * lambda_max, 0) are
// clipped to zero; anything more negative is a domain error.
inline constexpr double kPsdClip = 1e-10;

// Minimum eigenvalue ratio lambda_min / lambda_max accepted for the reference
// functional of a Kosaki space.
inline constexpr double kFaithfulnessFloor = 1e-13;

inline constexpr double kDefaultEpsRel = 1e-12;

// Numerical settings that change results. Every report echoes them.
struct NumericConfig {
  // Eigenvalue lambda is "kernel" iff |lambda| <= eps_rel * max_j |lambda_j|.
  double eps_rel = kDefaultEpsRel;
};

inline constexpr const char* kEigensolverId = "eigen3-selfadjoint-tridiagonal-qr";
inline constexpr const char* kSvdId = "eigen3-jacobi-svd";
inline constexpr const char* kLogBase = "nat";

}  // namespace nclp

#endif  // NCLP_CONFIG_HPP_
