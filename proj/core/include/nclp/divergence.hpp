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

// Sandwiched alpha-Renyi and alpha-z-Renyi divergences of normal positive
// functionals, with the +infinity branches kept explicit.
//
//   alpha < 1:  Q = tr[(h_phi^{(1-alpha)/2z} h_psi^{alpha/z} h_phi^{(1-alpha)/2z})^z]
//   alpha > 1:  Q = ||x||_z^z where x in s(phi) L^z s(phi) solves
//                 h_psi^{alpha/z} = h_phi^{(alpha-1)/2z} x h_phi^{(alpha-1)/2z}
//               and Q = +inf when no such x exists (s(psi) not under s(phi)).
//   D = log(Q / psi(1)) / (alpha - 1), natural log.
//
// The sandwiched case is z = alpha; it has its own code path through the
// Kosaki norm ||h_psi||_{alpha, phi, 1/2}.

#ifndef NCLP_DIVERGENCE_HPP_
#define NCLP_DIVERGENCE_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nclp/functionals.hpp"
#include "nclp/tensorprod.hpp"

namespace nclp {

enum class DivergenceReason { kFinite, kSupportViolation, kZeroQAlphaLt1, kZeroReference };

std::string_view reason_name(DivergenceReason reason);

struct DivergenceValue {
  double value = 0.0;
  DivergenceReason reason = DivergenceReason::kFinite;

  static DivergenceValue finite(double v) { return {v, DivergenceReason::kFinite}; }
  static DivergenceValue infinite(DivergenceReason why);
  bool is_finite() const { return reason == DivergenceReason::kFinite; }
};

class DivergenceParams {
 public:
  // z = alpha, alpha in [1/2, inf) \ {1}. Throws DomainError otherwise.
  static DivergenceParams sandwiched(double alpha);
  // alpha, z > 0, alpha != 1. Throws DomainError otherwise.
  static DivergenceParams alpha_z(double alpha, double z);

  double alpha() const { return alpha_; }
  double z() const { return z_; }
  bool is_sandwiched() const { return sandwiched_; }
  // alpha == z, either mode.
  bool is_diagonal() const { return alpha_ == z_; }
  std::string describe() const;

 private:
  DivergenceParams(double alpha, double z, bool sandwiched)
      : alpha_(alpha), z_(z), sandwiched_(sandwiched) {}
  double alpha_;
  double z_;
  bool sandwiched_;
};

// ||(1 - s(phi)) h_psi (1 - s(phi))||_F <= 1e-10 ||h_psi||_F.
bool support_dominated(const PositiveFunctional& psi, const PositiveFunctional& phi);

// Sandwiched Q_alpha. Throws DomainError when psi = 0 or alpha is out of range.
DivergenceValue q_tilde_alpha(const PositiveFunctional& psi, const PositiveFunctional& phi,
                              double alpha);

// alpha-z Q through the trace formula (alpha < 1) or the sandwich solve
// (alpha > 1). Throws DomainError when psi = 0, ConditioningError when the
// solve does not recompose within 1e-9.
DivergenceValue q_tilde_alpha_z(const PositiveFunctional& psi, const PositiveFunctional& phi,
                                const DivergenceParams& params);

// Dispatches on params.is_sandwiched().
DivergenceValue q_tilde(const PositiveFunctional& psi, const PositiveFunctional& phi,
                        const DivergenceParams& params);

DivergenceValue d_tilde(const PositiveFunctional& psi, const PositiveFunctional& phi,
                        const DivergenceParams& params);

struct SpadeSolution {
  Element x;
  double recomposition_residual = 0.0;
};

// The x of the alpha > 1 branch via support pseudo-inverse powers, or nullopt
// when s(psi) is not under s(phi).
std::optional<SpadeSolution> solve_spade(const PositiveFunctional& psi,
                                         const PositiveFunctional& phi, double alpha, double z);

struct Lemma9Report {
  DivergenceValue sandwiched;
  DivergenceValue alpha_alpha;
  double relative_error = 0.0;
  bool agree = false;
};

Lemma9Report lemma9_check(const PositiveFunctional& psi, const PositiveFunctional& phi,
                          double alpha);

enum class AdditivityBranch {
  kFinite,           // every Q finite (and positive when alpha < 1)
  kZeroProduct,      // alpha < 1 with a vanishing factor
  kInfiniteAsserted, // alpha = z > 1 with an infinite factor
  kInfiniteRecorded  // alpha > 1, z != alpha with an infinite factor
};

std::string_view branch_name(AdditivityBranch branch);

struct AdditivityReport {
  DivergenceValue q1, q2, q_product;
  DivergenceValue d1, d2, d_product;
  AdditivityBranch branch = AdditivityBranch::kFinite;
  double q_relative_error = 0.0;
  double d_absolute_error = 0.0;
  bool pass = false;
};

// Q multiplicativity within 1e-9 relative and D additivity within 1e-8
// absolute on the finite branch; +inf on the product when a factor is +inf
// and alpha = z.
AdditivityReport additivity_check(const PositiveFunctional& psi1, const PositiveFunctional& phi1,
                                  const PositiveFunctional& psi2, const PositiveFunctional& phi2,
                                  const DivergenceParams& params);

// A unital normal CP map Phi : from -> to, Phi(b) = sum_i V_i* b V_i. Each V_i
// is (from.carrier_dim x to.carrier_dim). Functionals on `to` pull back to
// `from` through h_{psi o Phi} = sum_i V_i h_psi V_i*, compressed to the block
// structure of `from`.
class QuantumChannelPre {
 public:
  // Throws ShapeError on operator shape mismatch and DomainError when
  // ||sum V_i* V_i - 1||_F > 1e-10.
  QuantumChannelPre(BlockAlgebra from, BlockAlgebra to, std::vector<Matrix> operators);

  static QuantumChannelPre identity(const BlockAlgebra& algebra);
  // Conditional expectation onto the diagonal.
  static QuantumChannelPre pinching(const BlockAlgebra& algebra);
  // a -> a (x) 1 from tensor.left() into tensor.product().
  static QuantumChannelPre tensor_embedding(const TensorAlgebra& tensor);

  const BlockAlgebra& from() const { return from_; }
  const BlockAlgebra& to() const { return to_; }
  const std::vector<Matrix>& operators() const { return ops_; }
  double unitality_residual() const { return unitality_residual_; }

  // Phi(b) for b on `from`, as a carrier matrix of `to`.
  Matrix apply(const Element& b) const;

 private:
  BlockAlgebra from_;
  BlockAlgebra to_;
  std::vector<Matrix> ops_;
  double unitality_residual_ = 0.0;
};

PositiveFunctional precompose(const PositiveFunctional& psi, const QuantumChannelPre& channel);

// Known-valid (alpha, z) region for monotonicity in finite dimensions.
// A row matches when alpha lies in its range and
//   max over lower forms (c * alpha + d) <= z <= upper form (c * alpha + d).
struct DpiRangeRow {
  double alpha_min;
  bool alpha_min_inclusive;
  double alpha_max;
  bool alpha_max_inclusive;
  struct Linear {
    double coef;
    double offset;
    double at(double a) const { return coef * a + offset; }
  };
  std::vector<Linear> lower;
  std::optional<Linear> upper;
};

std::span<const DpiRangeRow> dpi_range_table();
bool dpi_range_contains(const DivergenceParams& params);

struct DpiReport {
  DivergenceValue before;  // D(psi || phi)
  DivergenceValue after;   // D(psi o Phi || phi o Phi)
  bool asserted = false;
  // after - before, 0 when before is +inf, +inf when only after is +inf.
  double violation = 0.0;
  bool pass = false;
};

DpiReport dpi_probe(const PositiveFunctional& psi, const PositiveFunctional& phi,
                    const QuantumChannelPre& channel, const DivergenceParams& params);

}  // namespace nclp

#endif  // NCLP_DIVERGENCE_HPP_
