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

#include "nclp/divergence.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "nclp/errors.hpp"
#include "nclp/lp.hpp"

namespace nclp {
namespace {

constexpr double kSupportTolerance = 1e-10;
constexpr double kRecompositionTolerance = 1e-9;
constexpr double kLemma9Tolerance = 1e-10;
constexpr double kProductRelTolerance = 1e-9;
constexpr double kAdditivityAbsTolerance = 1e-8;
constexpr double kUnitalityTolerance = 1e-10;
constexpr double kDpiSlack = 1e-9;

void require_nonzero(const PositiveFunctional& psi, const char* op) {
  if (psi.is_zero()) throw DomainError(std::string(op) + ": psi must be nonzero");
}

void require_same_algebra(const PositiveFunctional& psi, const PositiveFunctional& phi,
                          const char* op) {
  if (!(psi.algebra() == phi.algebra())) {
    throw ShapeError(std::string(op) + ": psi and phi live on different algebras");
  }
}

double relative_gap(double a, double b) {
  const double diff = std::abs(a - b);
  if (diff == 0.0) return 0.0;
  return diff / std::max(std::abs(b), std::numeric_limits<double>::min());
}

// tr[(a c c* a)^z] = sum sigma_i^{2z} over the singular values of a c.
// Working with the factor keeps small eigenvalues of the sandwich accurate
// to rounding in sigma rather than in sigma^2, which matters for z < 1.
// Singular values at or below eps_rel * ||a|| ||c|| are kernel: that is the
// rounding floor of the product, whatever its own largest singular value.
double factor_trace_power(const Element& a, const Element& c, double z,
                          const NumericConfig& config) {
  const LpExponent inf = LpExponent::infinity();
  const double scale = lp_norm(a, inf) * lp_norm(c, inf);
  if (scale == 0.0) return 0.0;
  const double cutoff = config.eps_rel * scale;
  double acc = 0.0;
  for (double sigma : singular_values(a * c)) {
    if (sigma > cutoff) acc += std::pow(sigma, 2.0 * z);
  }
  return acc;
}

}  // namespace

std::string_view reason_name(DivergenceReason reason) {
  switch (reason) {
    case DivergenceReason::kFinite: return "finite";
    case DivergenceReason::kSupportViolation: return "support_violation";
    case DivergenceReason::kZeroQAlphaLt1: return "zero_Q_alpha_lt_1";
    case DivergenceReason::kZeroReference: return "zero_reference";
  }
  return "unknown";
}

DivergenceValue DivergenceValue::infinite(DivergenceReason why) {
  return {std::numeric_limits<double>::infinity(), why};
}

DivergenceParams DivergenceParams::sandwiched(double alpha) {
  if (!(alpha >= 0.5) || alpha == 1.0 || !std::isfinite(alpha)) {
    throw DomainError("sandwiched divergence needs alpha in [1/2, inf) without 1");
  }
  return DivergenceParams(alpha, alpha, true);
}

DivergenceParams DivergenceParams::alpha_z(double alpha, double z) {
  if (!(alpha > 0.0) || !(z > 0.0) || alpha == 1.0 || !std::isfinite(alpha) || !std::isfinite(z)) {
    throw DomainError("alpha-z divergence needs alpha, z > 0 and alpha != 1");
  }
  return DivergenceParams(alpha, z, false);
}

std::string DivergenceParams::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (sandwiched_) {
    os << "sandwiched(alpha=" << alpha_ << ")";
  } else {
    os << "alpha-z(alpha=" << alpha_ << ",z=" << z_ << ")";
  }
  return os.str();
}

bool support_dominated(const PositiveFunctional& psi, const PositiveFunctional& phi) {
  require_same_algebra(psi, phi, "support_dominated");
  const Element outside = Element::identity(phi.algebra()) - phi.support();
  const double leak = (outside * psi.density() * outside).frobenius_norm();
  return leak <= kSupportTolerance * psi.density().frobenius_norm();
}

DivergenceValue q_tilde_alpha(const PositiveFunctional& psi, const PositiveFunctional& phi,
                              double alpha) {
  static_cast<void>(DivergenceParams::sandwiched(alpha));  // range check
  require_same_algebra(psi, phi, "q_tilde_alpha");
  require_nonzero(psi, "q_tilde_alpha");
  if (alpha < 1.0) {
    const Element a = phi.power((1.0 - alpha) / (2.0 * alpha));
    return DivergenceValue::finite(factor_trace_power(a, psi.power(0.5), alpha, psi.config()));
  }
  if (!support_dominated(psi, phi)) {
    return DivergenceValue::infinite(DivergenceReason::kSupportViolation);
  }
  // ||h_psi||_{alpha, phi, 1/2}^alpha. A faithful phi gives the Kosaki norm
  // directly; otherwise the space lives on the corner s(phi) M s(phi), where
  // the same sandwich is taken with pseudo-inverse powers.
  if (phi.is_faithful()) {
    try {
      const KosakiSpec spec(phi, LpExponent(alpha), 0.5);
      return DivergenceValue::finite(std::pow(kosaki_norm(psi.density(), spec), alpha));
    } catch (const ConditioningError&) {
      // Below the Kosaki floor: fall through to the corner computation.
    }
  }
  const Element b = phi.power(-(alpha - 1.0) / (2.0 * alpha));
  return DivergenceValue::finite(factor_trace_power(b, psi.power(0.5), alpha, psi.config()));
}

std::optional<SpadeSolution> solve_spade(const PositiveFunctional& psi,
                                         const PositiveFunctional& phi, double alpha, double z) {
  require_same_algebra(psi, phi, "solve_spade");
  if (!(alpha > 1.0) || !(z > 0.0)) throw DomainError("solve_spade: needs alpha > 1 and z > 0");
  if (!support_dominated(psi, phi)) return std::nullopt;
  const double e = (alpha - 1.0) / (2.0 * z);
  const Element target = psi.power(alpha / z);
  const Element s = phi.support();
  Element x = s * (phi.power(-e) * target * phi.power(-e)) * s;
  const Element back = phi.power(e) * x * phi.power(e);
  const double residual = distance(back, target);
  return SpadeSolution{std::move(x), residual};
}

DivergenceValue q_tilde_alpha_z(const PositiveFunctional& psi, const PositiveFunctional& phi,
                                const DivergenceParams& params) {
  require_same_algebra(psi, phi, "q_tilde_alpha_z");
  require_nonzero(psi, "q_tilde_alpha_z");
  const double alpha = params.alpha();
  const double z = params.z();
  const Element psi_half = psi.power(alpha / (2.0 * z));
  if (alpha < 1.0) {
    const Element a = phi.power((1.0 - alpha) / (2.0 * z));
    return DivergenceValue::finite(factor_trace_power(a, psi_half, z, psi.config()));
  }
  const std::optional<SpadeSolution> sol = solve_spade(psi, phi, alpha, z);
  if (!sol) return DivergenceValue::infinite(DivergenceReason::kSupportViolation);
  const double bound =
      kRecompositionTolerance * (1.0 + psi.power(alpha / z).frobenius_norm());
  if (sol->recomposition_residual > bound) {
    throw ConditioningError("q_tilde_alpha_z: sandwich equation does not recompose",
                            sol->recomposition_residual);
  }
  // x = b psi^{alpha/z} b is PSD, so ||x||_z^z = tr x^z.
  const Element b = phi.power(-(alpha - 1.0) / (2.0 * z));
  return DivergenceValue::finite(factor_trace_power(b, psi_half, z, psi.config()));
}

DivergenceValue q_tilde(const PositiveFunctional& psi, const PositiveFunctional& phi,
                        const DivergenceParams& params) {
  return params.is_sandwiched() ? q_tilde_alpha(psi, phi, params.alpha())
                                : q_tilde_alpha_z(psi, phi, params);
}

DivergenceValue d_tilde(const PositiveFunctional& psi, const PositiveFunctional& phi,
                        const DivergenceParams& params) {
  const DivergenceValue q = q_tilde(psi, phi, params);
  if (!q.is_finite()) return q;
  if (params.alpha() < 1.0 && q.value <= 0.0) {
    return DivergenceValue::infinite(phi.is_zero() ? DivergenceReason::kZeroReference
                                                   : DivergenceReason::kZeroQAlphaLt1);
  }
  return DivergenceValue::finite(std::log(q.value / psi.mass()) / (params.alpha() - 1.0));
}

Lemma9Report lemma9_check(const PositiveFunctional& psi, const PositiveFunctional& phi,
                          double alpha) {
  Lemma9Report rep;
  rep.sandwiched = q_tilde_alpha(psi, phi, alpha);
  rep.alpha_alpha = q_tilde_alpha_z(psi, phi, DivergenceParams::alpha_z(alpha, alpha));
  if (rep.sandwiched.is_finite() && rep.alpha_alpha.is_finite()) {
    rep.relative_error = relative_gap(rep.alpha_alpha.value, rep.sandwiched.value);
    rep.agree = rep.relative_error <= kLemma9Tolerance;
  } else {
    rep.relative_error = rep.sandwiched.reason == rep.alpha_alpha.reason
                             ? 0.0
                             : std::numeric_limits<double>::infinity();
    rep.agree = rep.sandwiched.reason == rep.alpha_alpha.reason;
  }
  return rep;
}

std::string_view branch_name(AdditivityBranch branch) {
  switch (branch) {
    case AdditivityBranch::kFinite: return "finite";
    case AdditivityBranch::kZeroProduct: return "zero_product";
    case AdditivityBranch::kInfiniteAsserted: return "infinite_asserted";
    case AdditivityBranch::kInfiniteRecorded: return "infinite_recorded";
  }
  return "unknown";
}

AdditivityReport additivity_check(const PositiveFunctional& psi1, const PositiveFunctional& phi1,
                                  const PositiveFunctional& psi2, const PositiveFunctional& phi2,
                                  const DivergenceParams& params) {
  const PositiveFunctional psi12 = kron_functional(psi1, psi2);
  const PositiveFunctional phi12 = kron_functional(phi1, phi2);
  AdditivityReport rep;
  rep.q1 = q_tilde(psi1, phi1, params);
  rep.q2 = q_tilde(psi2, phi2, params);
  rep.q_product = q_tilde(psi12, phi12, params);
  rep.d1 = d_tilde(psi1, phi1, params);
  rep.d2 = d_tilde(psi2, phi2, params);
  rep.d_product = d_tilde(psi12, phi12, params);

  const double inf = std::numeric_limits<double>::infinity();
  const bool factors_finite = rep.d1.is_finite() && rep.d2.is_finite();
  if (factors_finite) {
    rep.branch = AdditivityBranch::kFinite;
    if (!rep.q_product.is_finite() || !rep.d_product.is_finite()) {
      rep.q_relative_error = inf;
      rep.d_absolute_error = inf;
    } else {
      rep.q_relative_error = relative_gap(rep.q_product.value, rep.q1.value * rep.q2.value);
      rep.d_absolute_error = std::abs(rep.d_product.value - rep.d1.value - rep.d2.value);
    }
    rep.pass = rep.q_relative_error <= kProductRelTolerance &&
               rep.d_absolute_error <= kAdditivityAbsTolerance;
  } else if (params.alpha() < 1.0) {
    // Q is always finite here; a zero factor must give a zero product.
    rep.branch = AdditivityBranch::kZeroProduct;
    rep.q_relative_error = rep.q_product.value == 0.0 ? 0.0 : inf;
    rep.d_absolute_error = rep.d_product.is_finite() ? inf : 0.0;
    rep.pass = rep.q_relative_error == 0.0 && rep.d_absolute_error == 0.0;
  } else if (params.is_diagonal()) {
    rep.branch = AdditivityBranch::kInfiniteAsserted;
    rep.q_relative_error = rep.q_product.is_finite() ? inf : 0.0;
    rep.d_absolute_error = rep.d_product.is_finite() ? inf : 0.0;
    rep.pass = !rep.q_product.is_finite();
  } else {
    rep.branch = AdditivityBranch::kInfiniteRecorded;
    rep.pass = true;
  }
  return rep;
}

QuantumChannelPre::QuantumChannelPre(BlockAlgebra from, BlockAlgebra to,
                                     std::vector<Matrix> operators)
    : from_(std::move(from)), to_(std::move(to)), ops_(std::move(operators)) {
  if (ops_.empty()) throw ShapeError("QuantumChannelPre: at least one operator is required");
  const int rows = from_.carrier_dim();
  const int cols = to_.carrier_dim();
  Matrix gram = Matrix::Zero(cols, cols);
  for (const Matrix& v : ops_) {
    if (v.rows() != rows || v.cols() != cols) {
      throw ShapeError("QuantumChannelPre: operators must be " + std::to_string(rows) + "x" +
                       std::to_string(cols));
    }
    gram += v.adjoint() * v;
  }
  unitality_residual_ = (gram - Matrix::Identity(cols, cols)).norm();
  if (unitality_residual_ > kUnitalityTolerance) {
    throw DomainError("QuantumChannelPre: map is not unital (||sum V*V - 1||_F = " +
                      std::to_string(unitality_residual_) + ")");
  }
}

QuantumChannelPre QuantumChannelPre::identity(const BlockAlgebra& algebra) {
  const int d = algebra.carrier_dim();
  return QuantumChannelPre(algebra, algebra, {Matrix::Identity(d, d)});
}

QuantumChannelPre QuantumChannelPre::pinching(const BlockAlgebra& algebra) {
  const int d = algebra.carrier_dim();
  std::vector<Matrix> ops;
  for (int i = 0; i < d; ++i) {
    Matrix p = Matrix::Zero(d, d);
    p(i, i) = 1.0;
    ops.push_back(std::move(p));
  }
  return QuantumChannelPre(algebra, algebra, std::move(ops));
}

QuantumChannelPre QuantumChannelPre::tensor_embedding(const TensorAlgebra& tensor) {
  const BlockAlgebra& left = tensor.left();
  const BlockAlgebra& right = tensor.right();
  const BlockAlgebra& product = tensor.product();
  std::vector<Matrix> ops;
  // One operator per basis vector (j, b) of the right carrier.
  for (int j = 0; j < right.block_count(); ++j) {
    const int m = right.block_dim(j);
    for (int b = 0; b < m; ++b) {
      Matrix v = Matrix::Zero(left.carrier_dim(), product.carrier_dim());
      for (int i = 0; i < left.block_count(); ++i) {
        const int off = product.carrier_offset(tensor.product_block(i, j));
        for (int a = 0; a < left.block_dim(i); ++a) {
          v(left.carrier_offset(i) + a, off + a * m + b) = 1.0;
        }
      }
      ops.push_back(std::move(v));
    }
  }
  return QuantumChannelPre(left, product, std::move(ops));
}

Matrix QuantumChannelPre::apply(const Element& b) const {
  if (!(b.algebra() == from_)) throw ShapeError("QuantumChannelPre::apply: algebra mismatch");
  const Matrix dense = b.to_carrier();
  const int d = to_.carrier_dim();
  Matrix out = Matrix::Zero(d, d);
  for (const Matrix& v : ops_) out += v.adjoint() * dense * v;
  return out;
}

PositiveFunctional precompose(const PositiveFunctional& psi, const QuantumChannelPre& channel) {
  if (!(psi.algebra() == channel.to())) {
    throw ShapeError("precompose: functional does not live on the channel's target algebra");
  }
  const Matrix h = psi.density().to_carrier();
  const int d = channel.from().carrier_dim();
  Matrix pulled = Matrix::Zero(d, d);
  for (const Matrix& v : channel.operators()) pulled += v * h * v.adjoint();
  return PositiveFunctional(Element::from_carrier(channel.from(), pulled), psi.config());
}

std::span<const DpiRangeRow> dpi_range_table() {
  // Finite-dimensional monotonicity region of the alpha-z divergences:
  //   0 < alpha < 1:   z >= max(alpha, 1 - alpha)
  //   1 < alpha <= 2:  alpha / 2 <= z <= alpha
  //   2 <= alpha:      alpha - 1 <= z <= alpha
  using L = DpiRangeRow::Linear;
  static const std::vector<DpiRangeRow> table = {
      {0.0, false, 1.0, false, {L{1.0, 0.0}, L{-1.0, 1.0}}, std::nullopt},
      {1.0, false, 2.0, true, {L{0.5, 0.0}}, L{1.0, 0.0}},
      {2.0, true, std::numeric_limits<double>::infinity(), false, {L{1.0, -1.0}}, L{1.0, 0.0}},
  };
  return table;
}

bool dpi_range_contains(const DivergenceParams& params) {
  const double a = params.alpha();
  const double z = params.z();
  for (const DpiRangeRow& row : dpi_range_table()) {
    const bool above_min = row.alpha_min_inclusive ? a >= row.alpha_min : a > row.alpha_min;
    const bool below_max = row.alpha_max_inclusive ? a <= row.alpha_max : a < row.alpha_max;
    if (!above_min || !below_max) continue;
    bool ok = true;
    for (const auto& lo : row.lower) ok = ok && z >= lo.at(a);
    if (row.upper) ok = ok && z <= row.upper->at(a);
    if (ok) return true;
  }
  return false;
}

DpiReport dpi_probe(const PositiveFunctional& psi, const PositiveFunctional& phi,
                    const QuantumChannelPre& channel, const DivergenceParams& params) {
  DpiReport rep;
  rep.before = d_tilde(psi, phi, params);
  rep.after = d_tilde(precompose(psi, channel), precompose(phi, channel), params);
  rep.asserted = dpi_range_contains(params);
  if (!rep.before.is_finite()) {
    rep.violation = 0.0;
  } else if (!rep.after.is_finite()) {
    rep.violation = std::numeric_limits<double>::infinity();
  } else {
    rep.violation = rep.after.value - rep.before.value;
  }
  rep.pass = !rep.asserted || rep.violation <= kDpiSlack;
  return rep;
}

}  // namespace nclp
