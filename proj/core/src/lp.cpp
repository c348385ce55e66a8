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

#include "nclp/lp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "nclp/errors.hpp"

namespace nclp {
namespace {

constexpr double kRecompositionTolerance = 1e-9;
constexpr double kRankThreshold = 1e-10;

bool below_floor(const PositiveFunctional& phi) {
  const HermitianSpectrum& s = phi.spectrum();
  const double lmax = s.max_abs_eigenvalue();
  return lmax == 0.0 || s.min_eigenvalue() < kFaithfulnessFloor * lmax;
}

}  // namespace

LpExponent::LpExponent(double p) : p_(p), infinite_(std::isinf(p)) {
  if (!(p > 0.0)) throw DomainError("LpExponent: p must be positive");
}

LpExponent LpExponent::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "INF") return infinity();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("cannot parse exponent '" + std::string(text) + "'");
  }
  if (!(v > 0.0)) throw UsageError("exponent must be positive");
  return LpExponent(v);
}

LpExponent LpExponent::dual() const {
  if (infinite_) return LpExponent(1.0);
  if (p_ < 1.0) throw DomainError("LpExponent::dual: requires p >= 1");
  if (p_ == 1.0) return infinity();
  return LpExponent(p_ / (p_ - 1.0));
}

std::string LpExponent::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << p_;
  return os.str();
}

double lp_norm(const Element& x, const LpExponent& p, const NumericConfig& config) {
  const std::vector<double> sigma = singular_values(x);
  if (sigma.empty()) return 0.0;
  if (p.is_infinite()) return *std::max_element(sigma.begin(), sigma.end());
  const double smax = *std::max_element(sigma.begin(), sigma.end());
  if (smax == 0.0) return 0.0;
  // Scale by sigma_max so large p cannot overflow.
  double acc = 0.0;
  const double cutoff = config.eps_rel * smax;
  for (double s : sigma) {
    if (s > cutoff) acc += std::pow(s / smax, p.value());
  }
  return smax * std::pow(acc, 1.0 / p.value());
}

KosakiSpec::KosakiSpec(PositiveFunctional phi, LpExponent p, double eta)
    : phi_(std::move(phi)), p_(p), eta_(eta) {
  if (!p_.is_infinite() && p_.value() < 1.0) throw DomainError("KosakiSpec: p must be >= 1");
  if (!(eta_ >= 0.0 && eta_ <= 1.0)) throw DomainError("KosakiSpec: eta must lie in [0, 1]");
  if (!phi_.is_faithful() || below_floor(phi_)) {
    const HermitianSpectrum& s = phi_.spectrum();
    const double lmax = s.max_abs_eigenvalue();
    throw ConditioningError("KosakiSpec: reference functional is not faithful enough",
                            lmax > 0.0 ? s.min_eigenvalue() / lmax : 0.0);
  }
}

Element kosaki_embed(const Element& a, const KosakiSpec& spec) {
  const PositiveFunctional& phi = spec.phi();
  return phi.power(spec.eta()) * a * phi.power(1.0 - spec.eta());
}

Element kosaki_membership(const Element& y, const KosakiSpec& spec) {
  const PositiveFunctional& phi = spec.phi();
  const double inv_q = 1.0 - spec.p().reciprocal();
  const double left = spec.eta() * inv_q;
  const double right = (1.0 - spec.eta()) * inv_q;
  Element x = phi.power(-left) * y * phi.power(-right);
  const Element back = phi.power(left) * x * phi.power(right);
  const double residual = distance(back, y);
  if (residual > kRecompositionTolerance * (1.0 + y.frobenius_norm())) {
    throw ConditioningError("kosaki_membership: recomposition residual too large", residual);
  }
  return x;
}

double kosaki_norm(const Element& y, const KosakiSpec& spec) {
  return lp_norm(kosaki_membership(y, spec), spec.p(), spec.phi().config());
}

BoundSides interpolation_bound_check(const Element& a, const KosakiSpec& spec) {
  const Element y = kosaki_embed(a, spec);
  const double inv_p = spec.p().reciprocal();
  const double inv_q = 1.0 - inv_p;
  BoundSides out;
  out.lhs = kosaki_norm(y, spec);
  out.rhs = std::pow(lp_norm(a, LpExponent::infinity()), inv_q) *
            std::pow(lp_norm(y, LpExponent(1.0)), inv_p);
  return out;
}

BijectivityReport lemma3_bijectivity(const PositiveFunctional& phi, const LpExponent& p) {
  if (!p.is_infinite() && p.value() < 1.0) throw DomainError("lemma3_bijectivity: p must be >= 1");
  // Raw powers: no kernel cut, so the SVD below decides the rank.
  HermitianSpectrum raw = phi.spectrum();
  raw.kernel_cutoff = 0.0;
  const Element right = apply_function(raw, ScalarFunction::power(p.reciprocal()));

  double smin = std::numeric_limits<double>::infinity();
  double smax = 0.0;
  for (const Matrix& b : right.blocks()) {
    // Row-major vec(a b) = (I (x) b^T) vec(a).
    const Eigen::Index n = b.rows();
    Matrix lin = Matrix::Zero(n * n, n * n);
    for (Eigen::Index r = 0; r < n; ++r) lin.block(r * n, r * n, n, n) = b.transpose();
    Eigen::JacobiSVD<Matrix> svd(lin);
    smin = std::min(smin, svd.singularValues().minCoeff());
    smax = std::max(smax, svd.singularValues().maxCoeff());
  }
  BijectivityReport rep;
  rep.singular_ratio = smax > 0.0 ? smin / smax : 0.0;
  rep.bijective = rep.singular_ratio > kRankThreshold;
  rep.conditioning_flagged = !rep.bijective || below_floor(phi);
  return rep;
}

}  // namespace nclp
