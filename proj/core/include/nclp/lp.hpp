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

// Haagerup L^p (quasi-)norms and Kosaki interpolation spaces L^p(M, phi)_eta.
//
// In finite dimensions L^p(M) is the algebra itself with the Schatten norm
// taken against the canonical trace. The Kosaki space is realized through the
// identification
//
//   L^p(M, phi)_eta = h^{eta/q} L^p(M) h^{(1-eta)/q},   1/p + 1/q = 1,
//
// with ||h^{eta/q} x h^{(1-eta)/q}||_{p,phi,eta} := ||x||_p.

#ifndef NCLP_LP_HPP_
#define NCLP_LP_HPP_

#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "nclp/algebra.hpp"
#include "nclp/functionals.hpp"

namespace nclp {

// An exponent p in (0, infinity].
class LpExponent {
 public:
  // Throws DomainError unless p > 0 (p = +inf allowed).
  explicit LpExponent(double p);
  static LpExponent infinity() { return LpExponent(std::numeric_limits<double>::infinity()); }
  // Accepts a decimal or "inf"/"infinity". Throws UsageError.
  static LpExponent parse(std::string_view text);

  bool is_infinite() const { return infinite_; }
  double value() const { return p_; }
  // 1/p, 0 at infinity.
  double reciprocal() const { return infinite_ ? 0.0 : 1.0 / p_; }
  // Hoelder conjugate q, defined for p >= 1 (q = inf at p = 1).
  LpExponent dual() const;
  std::string to_string() const;

 private:
  double p_;
  bool infinite_;
};

// ||x||_p = (sum sigma_i^p)^{1/p};  ||x||_inf = max sigma_i. Singular values
// at or below eps_rel * sigma_max are kernel and contribute nothing.
double lp_norm(const Element& x, const LpExponent& p, const NumericConfig& config = {});

class KosakiSpec {
 public:
  // Throws DomainError for p < 1 or eta outside [0, 1], and ConditioningError
  // when phi is not faithful or lambda_min(h_phi) < 1e-13 lambda_max(h_phi).
  KosakiSpec(PositiveFunctional phi, LpExponent p, double eta);

  const PositiveFunctional& phi() const { return phi_; }
  const LpExponent& p() const { return p_; }
  double eta() const { return eta_; }
  KosakiSpec with_p(LpExponent p) const { return KosakiSpec(phi_, p, eta_); }

 private:
  PositiveFunctional phi_;
  LpExponent p_;
  double eta_;
};

// h^eta a h^{1-eta}.
Element kosaki_embed(const Element& a, const KosakiSpec& spec);

// The unique x with y = h^{eta/q} x h^{(1-eta)/q}. Throws ConditioningError
// when the recomposition residual exceeds 1e-9 (1 + ||y||_F).
Element kosaki_membership(const Element& y, const KosakiSpec& spec);

// ||y||_{p,phi,eta} = ||kosaki_membership(y)||_p.
double kosaki_norm(const Element& y, const KosakiSpec& spec);

struct BoundSides {
  double lhs = 0.0;
  double rhs = 0.0;
};

// With y = h^eta a h^{1-eta}:
//   lhs = ||y||_{p,phi,eta},  rhs = ||a||_inf^{1/q} ||y||_1^{1/p}.
BoundSides interpolation_bound_check(const Element& a, const KosakiSpec& spec);

struct BijectivityReport {
  bool bijective = false;
  // sigma_min / sigma_max of the D x D linearization of a -> a h^{1/p}.
  double singular_ratio = 0.0;
  // Set when phi is below the faithfulness floor or the ratio is <= 1e-10.
  bool conditioning_flagged = false;
};

// Rank test for a -> a h_phi^{1/p} on the D-dimensional carrier, p >= 1.
BijectivityReport lemma3_bijectivity(const PositiveFunctional& phi, const LpExponent& p);

}  // namespace nclp

#endif  // NCLP_LP_HPP_
