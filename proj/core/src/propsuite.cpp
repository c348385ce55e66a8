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

#include "nclp/propsuite.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "nclp/errors.hpp"
#include "nclp/functionals.hpp"
#include "nclp/generators.hpp"
#include "nclp/lp.hpp"
#include "nclp/oracles.hpp"
#include "nclp/random.hpp"

namespace nclp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::array<std::string_view, 11> kSuiteNames = {
    "lemma1", "lemma3", "lemma5", "theorem6", "corollary7", "lemma8",
    "lemma9", "prop11", "appendixA", "dpi",   "classical"};

std::vector<int> parse_blocks(std::string_view text) {
  std::vector<int> dims;
  std::size_t start = 0;
  while (true) {
    const std::size_t plus = text.find('+', start);
    const std::string_view part = text.substr(start, plus == std::string_view::npos
                                                         ? std::string_view::npos
                                                         : plus - start);
    int n = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), n);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size() || n < 1) {
      throw UsageError("malformed block dimensions '" + std::string(text) + "'");
    }
    dims.push_back(n);
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return dims;
}

std::string describe_dims(const BlockAlgebra& a) { return a.describe(); }

double relative_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

Element unit_frobenius(Element x) {
  const double n = x.frobenius_norm();
  if (n > 0.0) x *= Complex(1.0 / n, 0.0);
  return x;
}

std::string format_param(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string params_label(const DivergenceParams& params) { return params.describe(); }

class Trial {
 public:
  Trial(const SuiteConfig& config, const DimsProfile& dims, std::size_t index)
      : config_(config), dims_(dims), rng_(config.seed, index) {
    report_.trial_index = index;
    report_.fingerprint = rng_.fingerprint();
    report_.dims = dims.label();
  }

  RandomStream& rng() { return rng_; }
  const DimsProfile& dims() const { return dims_; }
  const SuiteConfig& config() const { return config_; }
  const NumericConfig& numeric() const { return config_.numeric; }

  void residual(std::string name, double value, const std::string& key, bool asserted = true) {
    const auto it = config_.tolerances.find(key);
    if (it == config_.tolerances.end()) throw Error("suite has no tolerance '" + key + "'");
    if (std::isnan(value)) value = kInf;
    report_.residuals.push_back({std::move(name), value, key, it->second, asserted});
  }
  void check(std::string name, bool ok, bool asserted = true) {
    residual(std::move(name), ok ? 0.0 : 1.0, "check", asserted);
  }
  void tag(std::string t) {
    if (std::find(report_.tags.begin(), report_.tags.end(), t) == report_.tags.end()) {
      report_.tags.push_back(std::move(t));
    }
  }
  void summary(const std::string& key, double value) { report_.summary[key] = value; }
  void describe(const std::string& name, const PositiveFunctional& f) {
    summary("mass." + name, f.mass());
    summary("rank." + name, f.spectrum().rank());
  }

  TrialReport finish() {
    report_.pass = !report_.residuals.empty() &&
                   std::all_of(report_.residuals.begin(), report_.residuals.end(),
                               [](const Residual& r) { return r.ok(); });
    return std::move(report_);
  }
  TrialReport fail(const std::string& what) {
    tag("error:" + what);
    report_.residuals.push_back({"error", kInf, "check", 0.5, true});
    report_.pass = false;
    return std::move(report_);
  }

  PositiveFunctional functional(const BlockAlgebra& alg, RankProfile profile) {
    const PositiveFunctional f = gen_positive_functional(rng_, alg, profile);
    return PositiveFunctional(f.density(), numeric());
  }
  PositiveFunctional planted(const BlockAlgebra& alg, std::span<const int> ranks,
                             double floor) {
    const PositiveFunctional f = gen_planted_functional(rng_, alg, ranks, floor);
    return PositiveFunctional(f.density(), numeric());
  }
  // Per-block ranks with at least one positive and at least one deficient
  // block (when any block has dimension >= 2).
  std::vector<int> non_faithful_ranks(const BlockAlgebra& alg) {
    std::vector<int> ranks;
    for (int n : alg.block_dims()) ranks.push_back(rng_.uniform_int(0, n));
    std::vector<int> wide;
    for (int k = 0; k < alg.block_count(); ++k)
      if (alg.block_dim(k) >= 2) wide.push_back(k);
    if (!wide.empty()) {
      const int k = wide[static_cast<std::size_t>(
          rng_.uniform_int(0, static_cast<int>(wide.size()) - 1))];
      ranks[static_cast<std::size_t>(k)] = rng_.uniform_int(1, alg.block_dim(k) - 1);
    }
    return ranks;
  }
  // Support inside s(phi): h = P G G* P.
  PositiveFunctional inside_support(const PositiveFunctional& phi) {
    const Element g = random_element(rng_, phi.algebra());
    const Element p = phi.support();
    Element h = p * g * g.adjoint() * p;
    h = 0.5 * (h + h.adjoint());
    h *= Complex(1.0 / canonical_trace(h).real(), 0.0);
    return PositiveFunctional(std::move(h), numeric());
  }
  Element random_x(const BlockAlgebra& alg, bool deficient) {
    Element x = random_element(rng_, alg);
    if (deficient) x = x * gen_positive_functional(rng_, alg, RankProfile::deficient(1)).support();
    return unit_frobenius(std::move(x));
  }

 private:
  const SuiteConfig& config_;
  const DimsProfile& dims_;
  RandomStream rng_;
  TrialReport report_;
};

// ---------------------------------------------------------------------------

void lemma1_trial(Trial& tr) {
  const BlockAlgebra alg = tr.dims().combined();
  const std::vector<int> ranks = tr.non_faithful_ranks(alg);
  const ComplementaryPair pair = gen_complementary_pair(tr.rng(), alg, ranks, 0.05);
  const PositiveFunctional phi = tr.functional(alg, RankProfile::full());
  const PositiveFunctional chi = tr.functional(alg, RankProfile::full());
  const PositiveFunctional& psi = pair.psi;
  tr.describe("psi", psi);
  tr.describe("phi", phi);
  if (!psi.is_faithful()) tr.tag("planted:non_faithful");

  const double t = tr.rng().uniform(-3.0, 3.0);
  const double s = tr.rng().uniform(-3.0, 3.0);
  tr.summary("t", t);
  tr.summary("s", s);

  const CutSides cut = lemma1_cut(psi, pair.complement, phi, t);
  tr.residual("cut", distance(cut.lhs, cut.rhs), "lemma1.cut");

  const Element u_t = connes_cocycle(psi, phi, t);
  const Element u_s = connes_cocycle(psi, phi, s);
  const Element u_ts = connes_cocycle(psi, phi, t + s);
  const Element sigma_u_s = phi.imaginary_power(t) * u_s * phi.imaginary_power(-t);
  tr.residual("group_law", distance(u_ts, u_t * sigma_u_s), "lemma1.group_law");
  tr.residual("unitarity", distance(u_t * u_t.adjoint(), psi.support()), "lemma1.group_law");
  tr.residual("imaginary_power_group",
              distance(psi.imaginary_power(t) * psi.imaginary_power(s), psi.imaginary_power(t + s)),
              "lemma1.group_law");

  const Element chain = connes_cocycle(psi, chi, t) * connes_cocycle(chi, phi, t);
  tr.residual("chain_rule", distance(chain, u_t), "lemma1.group_law");
}

void lemma3_trial(Trial& tr) {
  static constexpr std::array<double, 8> kExponents = {1.0, 1.25, 1.5, 2.0, 3.0, 4.0, 8.0, kInf};
  const BlockAlgebra alg = tr.dims().combined();
  const PositiveFunctional phi = tr.functional(alg, RankProfile::full());
  const Element a = tr.random_x(alg, false);
  const double pv = kExponents[static_cast<std::size_t>(
      tr.rng().uniform_int(0, static_cast<int>(kExponents.size()) - 1))];
  const LpExponent p = std::isinf(pv) ? LpExponent::infinity() : LpExponent(pv);
  double eta = 0.0;
  switch (tr.rng().uniform_int(0, 4)) {
    case 0: eta = 0.0; break;
    case 1: eta = 1.0; break;
    case 2: eta = 0.5; break;
    default: eta = tr.rng().uniform(); break;
  }
  tr.summary("p", p.is_infinite() ? kInf : p.value());
  tr.summary("eta", eta);
  tr.describe("phi", phi);

  const BoundSides bound = interpolation_bound_check(a, KosakiSpec(phi, p, eta));
  tr.summary("bound.lhs", bound.lhs);
  tr.summary("bound.rhs", bound.rhs);
  tr.residual("bound", std::max(0.0, bound.lhs - bound.rhs) / bound.rhs, "lemma3.bound");

  const BijectivityReport bij = lemma3_bijectivity(phi, p);
  tr.summary("bijectivity.singular_ratio", bij.singular_ratio);
  tr.check("bijective", bij.bijective);
}

void theorem6_trial(Trial& tr) {
  static constexpr std::array<double, 6> kExponents = {0.5, 1.0, 1.7, 2.0, 3.0, kInf};
  const TensorAlgebra tensor = tr.dims().tensor();
  const bool deficient = tr.rng().uniform_int(0, 3) == 3;
  const Element x = tr.random_x(tensor.left(), deficient);
  const Element y = tr.random_x(tensor.right(), false);
  if (deficient) tr.tag("planted:rank_deficient");
  for (double pv : kExponents) {
    const LpExponent p = std::isinf(pv) ? LpExponent::infinity() : LpExponent(pv);
    tr.residual("p=" + p.to_string(), theorem6_norm(x, y, p).relative_error(),
                "theorem6.relative");
  }
}

void lemma5_trial(Trial& tr) {
  const TensorAlgebra tensor = tr.dims().tensor();
  const bool deficient = tr.rng().uniform_int(0, 2) == 2;
  const Element x = tr.random_x(tensor.left(), deficient);
  const Element y = tr.random_x(tensor.right(), false);
  if (deficient) tr.tag("planted:rank_deficient");

  const PolarFactorReport polar = lemma5_polar(x, y, tr.numeric());
  tr.residual("polar.isometry", polar.isometry_residual, "lemma5.polar");
  tr.residual("polar.modulus", polar.modulus_residual, "lemma5.polar");
  for (double p : {0.5, 2.0, 3.0}) {
    tr.residual("power.p=" + format_param(p), lemma5_power(x, y, p, tr.numeric()),
                "lemma5.power");
  }

  const bool psi1_deficient = tr.rng().uniform_int(0, 1) == 1;
  const bool psi2_deficient = tr.rng().uniform_int(0, 1) == 1;
  const PositiveFunctional psi1 = tr.functional(
      tensor.left(), psi1_deficient ? RankProfile::deficient(1) : RankProfile::full());
  const PositiveFunctional psi2 = tr.functional(
      tensor.right(), psi2_deficient ? RankProfile::deficient(1) : RankProfile::full());
  if (psi1_deficient || psi2_deficient) tr.tag("planted:rank_deficient_density");
  tr.describe("psi1", psi1);
  tr.describe("psi2", psi2);
  const PositiveFunctional psi12 = kron_functional(psi1, psi2);

  const Element a = random_element(tr.rng(), tensor.left());
  const Element b = random_element(tr.rng(), tensor.right());
  const Complex factored = psi1.evaluate(a) * psi2.evaluate(b);
  const Complex joint = psi12.evaluate(kron_element(tensor, a, b));
  tr.residual("density.evaluation", std::abs(joint - factored) / (1.0 + std::abs(factored)),
              "lemma5.density");
  tr.residual("density.mass", std::abs(psi12.mass() - psi1.mass() * psi2.mass()),
              "lemma5.density");
  tr.residual("density.support",
              distance(psi12.support(), kron_element(tensor, psi1.support(), psi2.support())),
              "lemma5.imaginary");

  const double t = tr.rng().uniform(-3.0, 3.0);
  tr.summary("t", t);
  tr.residual("imaginary_power",
              lemma5_imaginary_power(psi1.density(), psi2.density(), t, tr.numeric()),
              "lemma5.imaginary");
  tr.residual("imaginary_power.functional",
              distance(psi12.imaginary_power(t),
                       kron_element(tensor, psi1.imaginary_power(t), psi2.imaginary_power(t))),
              "lemma5.imaginary");
}

void corollary7_trial(Trial& tr) {
  const TensorAlgebra tensor = tr.dims().tensor();
  const PositiveFunctional phi1 = tr.functional(tensor.left(), RankProfile::full());
  const PositiveFunctional phi2 = tr.functional(tensor.right(), RankProfile::full());
  const Element x1 = tr.random_x(tensor.left(), false);
  const Element x2 = tr.random_x(tensor.right(), false);
  tr.describe("phi1", phi1);
  tr.describe("phi2", phi2);
  for (double p : {1.0, 1.5, 2.0, 4.0}) {
    for (double eta : {0.0, 0.25, 0.5, 1.0}) {
      const KosakiSpec s1(phi1, LpExponent(p), eta);
      const KosakiSpec s2(phi2, LpExponent(p), eta);
      const NormSides sides = corollary7_norm(x1, x2, s1, s2);
      tr.residual("p=" + format_param(p) + ",eta=" + format_param(eta), sides.relative_error(),
                  "corollary7.relative");
    }
  }
  // Membership of the product forces membership of the factors; in finite
  // dimensions every factor norm is finite.
  const KosakiSpec s1(phi1, LpExponent(2.0), 0.5);
  const KosakiSpec s2(phi2, LpExponent(2.0), 0.5);
  tr.check("probe.factor_norms_finite",
           std::isfinite(kosaki_norm(x1, s1)) && std::isfinite(kosaki_norm(x2, s2)));
}

void lemma8_trial(Trial& tr) {
  const BlockAlgebra alg = tr.dims().combined();
  std::vector<int> ranks;
  for (int n : alg.block_dims()) ranks.push_back(n == 1 ? 1 : tr.rng().uniform_int(1, n - 1));
  const PositiveFunctional phi = tr.planted(alg, ranks, 0.2);
  const PositiveFunctional psi = tr.inside_support(phi);
  tr.describe("phi", phi);
  tr.describe("psi", psi);
  if (!phi.is_faithful()) tr.tag("planted:non_faithful_reference");
  for (const DivergenceParams& params : tr.config().param_grid) {
    const std::string label = params_label(params);
    const auto sol = solve_spade(psi, phi, params.alpha(), params.z());
    if (!sol) {
      tr.residual(label + ".agreement", kInf, "lemma8.agreement");
      continue;
    }
    const Element ls = spade_least_squares(psi, phi, params.alpha(), params.z());
    tr.residual(label + ".agreement",
                distance(sol->x, ls) / (1.0 + sol->x.frobenius_norm()), "lemma8.agreement");
    tr.residual(label + ".recomposition", sol->recomposition_residual, "lemma8.recomposition");
  }
}

void lemma9_trial(Trial& tr) {
  const BlockAlgebra alg = tr.dims().combined();
  const int kind = tr.rng().uniform_int(0, 4);
  PositiveFunctional phi = PositiveFunctional::zero(alg);
  PositiveFunctional psi = PositiveFunctional::zero(alg);
  if (kind <= 2) {
    phi = tr.functional(alg, RankProfile::full());
    psi = tr.functional(alg, RankProfile::full());
  } else {
    phi = tr.planted(alg, tr.non_faithful_ranks(alg), 0.1);
    if (kind == 3) {
      psi = tr.inside_support(phi);
      tr.tag("planted:dominated_non_faithful");
    } else {
      psi = tr.functional(alg, RankProfile::full());
      tr.tag("planted:support_violation");
    }
  }
  tr.describe("psi", psi);
  tr.describe("phi", phi);
  for (const DivergenceParams& params : tr.config().param_grid) {
    const Lemma9Report rep = lemma9_check(psi, phi, params.alpha());
    tr.tag("reason:" + std::string(reason_name(rep.alpha_alpha.reason)));
    tr.residual("alpha=" + format_param(params.alpha()), rep.relative_error, "lemma9.relative");
    tr.check("alpha=" + format_param(params.alpha()) + ".reason",
             rep.sandwiched.reason == rep.alpha_alpha.reason);
  }
}

void prop11_trial(Trial& tr) {
  const TensorAlgebra tensor = tr.dims().tensor();
  const BlockAlgebra& left = tensor.left();
  const BlockAlgebra& right = tensor.right();
  const int kind = tr.rng().uniform_int(0, 9);
  PositiveFunctional psi1 = tr.planted(left, left.block_dims(), 0.1);
  PositiveFunctional phi1 = tr.planted(left, left.block_dims(), 0.1);
  PositiveFunctional psi2 = tr.planted(right, right.block_dims(), 0.1);
  PositiveFunctional phi2 = tr.planted(right, right.block_dims(), 0.1);
  switch (kind) {
    case 6:
      phi1 = tr.planted(left, tr.non_faithful_ranks(left), 0.1);
      psi1 = tr.inside_support(phi1);
      tr.tag("planted:dominated_non_faithful");
      break;
    case 7:
      phi1 = tr.planted(left, tr.non_faithful_ranks(left), 0.1);
      tr.tag("planted:support_violation");
      break;
    case 8: {
      std::vector<int> ranks = tr.non_faithful_ranks(left);
      ComplementaryPair pair = gen_complementary_pair(tr.rng(), left, ranks, 0.1);
      psi1 = PositiveFunctional(pair.psi.density(), tr.numeric());
      phi1 = PositiveFunctional(pair.complement.density(), tr.numeric());
      tr.tag("planted:orthogonal_supports");
      break;
    }
    case 9:
      phi2 = PositiveFunctional::zero(right);
      tr.tag("planted:zero_reference");
      break;
    default:
      break;
  }
  tr.describe("psi1", psi1);
  tr.describe("phi1", phi1);
  tr.describe("psi2", psi2);
  tr.describe("phi2", phi2);
  for (const DivergenceParams& params : tr.config().param_grid) {
    const std::string label = params_label(params);
    const AdditivityReport rep = additivity_check(psi1, phi1, psi2, phi2, params);
    tr.tag("branch:" + std::string(branch_name(rep.branch)));
    for (const DivergenceValue* d : {&rep.d1, &rep.d2, &rep.d_product}) {
      tr.tag("reason:" + std::string(reason_name(d->reason)));
    }
    switch (rep.branch) {
      case AdditivityBranch::kFinite:
        tr.residual(label + ".q_relative", rep.q_relative_error, "prop11.q_relative");
        tr.residual(label + ".d_absolute", rep.d_absolute_error, "prop11.d_absolute");
        break;
      case AdditivityBranch::kZeroProduct:
      case AdditivityBranch::kInfiniteAsserted:
        tr.check(label + ".infinite_branch", rep.pass);
        break;
      case AdditivityBranch::kInfiniteRecorded:
        tr.check(label + ".infinite_branch", !rep.q_product.is_finite(), false);
        break;
    }
  }
}

void classical_trial(Trial& tr) {
  const BlockAlgebra alg = tr.dims().combined();
  const int n = alg.carrier_dim();
  PositiveFunctional psi = gen_diagonal_functional(tr.rng(), alg, 0.25);
  PositiveFunctional phi = gen_diagonal_functional(tr.rng(), alg, 0.25);
  if (n >= 2 && tr.rng().uniform_int(0, 5) == 5) {
    // Disjoint supports.
    const int cut = tr.rng().uniform_int(1, n - 1);
    std::vector<double> p(static_cast<std::size_t>(n), 0.0);
    std::vector<double> q(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      (i < cut ? p : q)[static_cast<std::size_t>(i)] = 1.0 - tr.rng().uniform();
    }
    psi = PositiveFunctional(Element::diagonal(alg, std::span<const double>(p)));
    phi = PositiveFunctional(Element::diagonal(alg, std::span<const double>(q)));
    tr.tag("planted:orthogonal_supports");
  }
  psi = PositiveFunctional(psi.density(), tr.numeric());
  phi = PositiveFunctional(phi.density(), tr.numeric());
  tr.describe("psi", psi);
  tr.describe("phi", phi);

  const Matrix hp = psi.density().to_carrier();
  const Matrix hq = phi.density().to_carrier();
  std::vector<double> p(static_cast<std::size_t>(n));
  std::vector<double> q(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    p[static_cast<std::size_t>(i)] = hp(i, i).real();
    q[static_cast<std::size_t>(i)] = hq(i, i).real();
  }
  for (const DivergenceParams& params : tr.config().param_grid) {
    const DivergenceValue oracle = classical_renyi_oracle(p, q, params.alpha());
    const DivergenceValue got = q_tilde(psi, phi, params);
    tr.tag("reason:" + std::string(reason_name(got.reason)));
    double err = 0.0;
    if (oracle.is_finite() && got.is_finite()) {
      err = relative_error(got.value, oracle.value);
    } else if (oracle.reason != got.reason) {
      err = kInf;
    }
    tr.residual(params_label(params), err, "classical.relative");
  }
}

void appendix_a_trial(Trial& tr) {
  const TensorAlgebra tensor = tr.dims().tensor();
  const bool deficient = tr.rng().uniform_int(0, 2) == 2;
  const Element x = tr.random_x(tensor.left(), deficient);
  const Element y = tr.random_x(tensor.right(), false);
  if (deficient) tr.tag("planted:rank_deficient");

  tr.residual("spectrum", spectral_product_residual(x, y), "appendixA.spectral");

  const Element ax = polar_decompose(x, tr.numeric()).modulus;
  const Element ay = polar_decompose(y, tr.numeric()).modulus;
  const std::array<std::pair<std::string, ScalarFunction>, 5> functions = {{
      {"power=0.5", ScalarFunction::power(0.5)},
      {"power=1", ScalarFunction::power(1.0)},
      {"power=2", ScalarFunction::power(2.0)},
      {"it=0.3", ScalarFunction::imaginary_power(0.3)},
      {"it=1", ScalarFunction::imaginary_power(1.0)},
  }};
  for (const auto& [name, f] : functions) {
    tr.residual("multiplicative." + name,
                multiplicative_calculus_residual(ax, ay, f, tr.numeric()),
                "appendixA.multiplicative");
  }

  const Element x2 = tr.random_x(tensor.left(), false);
  const Element y2 = tr.random_x(tensor.right(), false);
  const Matrix lhs = kron(x.to_carrier(), y.to_carrier()) * kron(x2.to_carrier(), y2.to_carrier());
  const Matrix rhs = kron(naive_product(x.to_carrier(), x2.to_carrier()),
                          naive_product(y.to_carrier(), y2.to_carrier()));
  tr.residual("mixed_product", (lhs - rhs).norm() / (1.0 + rhs.norm()), "appendixA.algebra");
  tr.residual("adjoint",
              distance(kron_element(tensor, x, y).adjoint(),
                       kron_element(tensor, x.adjoint(), y.adjoint())),
              "appendixA.algebra");
}

void dpi_trial(Trial& tr, std::size_t index) {
  const std::size_t profiles = tr.config().dims.size();
  const int kind = static_cast<int>((index / profiles) % 3);
  std::optional<QuantumChannelPre> channel;
  switch (kind) {
    case 0:
      channel = QuantumChannelPre::pinching(tr.dims().combined());
      tr.tag("channel:pinching");
      break;
    case 1:
      channel = QuantumChannelPre::tensor_embedding(tr.dims().tensor());
      tr.tag("channel:partial_trace");
      break;
    default: {
      const BlockAlgebra to = tr.dims().combined();
      const int m = tr.rng().uniform_int(2, 3);
      const int kraus = (to.carrier_dim() + m - 1) / m + tr.rng().uniform_int(0, 1);
      channel = gen_unital_channel(tr.rng(), m, to, kraus);
      tr.tag("channel:random_unital_cp");
      break;
    }
  }
  const BlockAlgebra& alg = channel->to();
  const PositiveFunctional psi = tr.functional(alg, RankProfile::full());
  const bool deficient = tr.rng().uniform_int(0, 3) == 3;
  const PositiveFunctional phi =
      tr.functional(alg, deficient ? RankProfile::deficient(1) : RankProfile::full());
  if (deficient) tr.tag("planted:non_faithful_reference");
  tr.describe("psi", psi);
  tr.describe("phi", phi);
  for (const DivergenceParams& params : tr.config().param_grid) {
    const DpiReport rep = dpi_probe(psi, phi, *channel, params);
    tr.residual(params_label(params), std::max(0.0, rep.violation), "dpi.slack", rep.asserted);
  }
}

TrialReport run_trial(const SuiteConfig& config, std::size_t index) {
  const DimsProfile& dims = config.dims[index % config.dims.size()];
  Trial tr(config, dims, index);
  try {
    const std::string& name = config.suite_name;
    if (name == "lemma1") lemma1_trial(tr);
    else if (name == "lemma3") lemma3_trial(tr);
    else if (name == "lemma5") lemma5_trial(tr);
    else if (name == "theorem6") theorem6_trial(tr);
    else if (name == "corollary7") corollary7_trial(tr);
    else if (name == "lemma8") lemma8_trial(tr);
    else if (name == "lemma9") lemma9_trial(tr);
    else if (name == "prop11") prop11_trial(tr);
    else if (name == "appendixA") appendix_a_trial(tr);
    else if (name == "dpi") dpi_trial(tr, index);
    else if (name == "classical") classical_trial(tr);
    else throw UsageError("unknown suite '" + name + "'");
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    return tr.fail(e.what());
  }
  return tr.finish();
}

std::vector<DivergenceParams> alpha_z_grid(std::initializer_list<double> alphas) {
  std::vector<DivergenceParams> grid;
  for (double a : alphas) {
    std::vector<double> zs;
    for (double z : {0.5, 1.0, a, 2.0 * a}) {
      if (std::find(zs.begin(), zs.end(), z) == zs.end()) zs.push_back(z);
    }
    for (double z : zs) grid.push_back(DivergenceParams::alpha_z(a, z));
  }
  return grid;
}

std::vector<DivergenceParams> sandwiched_grid(std::initializer_list<double> alphas) {
  std::vector<DivergenceParams> grid;
  for (double a : alphas) grid.push_back(DivergenceParams::sandwiched(a));
  return grid;
}

}  // namespace

BlockAlgebra DimsProfile::combined() const {
  if (!right) return left;
  return TensorAlgebra(left, *right).product();
}

TensorAlgebra DimsProfile::tensor() const { return TensorAlgebra(left, right ? *right : left); }

std::string DimsProfile::label() const {
  return right ? describe_dims(left) + "x" + describe_dims(*right) : describe_dims(left);
}

DimsProfile parse_dims_profile(std::string_view text) {
  const std::size_t x = text.find('x');
  if (x == std::string_view::npos) return {BlockAlgebra(parse_blocks(text)), std::nullopt};
  if (text.find('x', x + 1) != std::string_view::npos) {
    throw UsageError("malformed dims profile '" + std::string(text) + "'");
  }
  return {BlockAlgebra(parse_blocks(text.substr(0, x))),
          BlockAlgebra(parse_blocks(text.substr(x + 1)))};
}

std::vector<DimsProfile> parse_dims_list(std::string_view text) {
  std::vector<DimsProfile> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_dims_profile(text.substr(
        start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::span<const std::string_view> suite_names() { return kSuiteNames; }

SuiteConfig default_suite_config(std::string_view name) {
  SuiteConfig c;
  c.suite_name = std::string(name);
  c.seed = 1;
  c.tolerances["check"] = 0.5;
  if (name == "lemma1") {
    c.trials = 800;
    c.dims = parse_dims_list("2,3,4,2+2");
    c.tolerances["lemma1.cut"] = 1e-9;
    c.tolerances["lemma1.group_law"] = 1e-10;
  } else if (name == "lemma3") {
    c.trials = 500;
    c.dims = parse_dims_list("2,3,2+3");
    c.tolerances["lemma3.bound"] = 1e-10;
  } else if (name == "lemma5") {
    c.trials = 300;
    c.dims = parse_dims_list("2x2,3x2,2+1x2");
    c.tolerances["lemma5.polar"] = 1e-9;
    c.tolerances["lemma5.power"] = 1e-9;
    c.tolerances["lemma5.density"] = 1e-12;
    c.tolerances["lemma5.imaginary"] = 1e-9;
  } else if (name == "theorem6") {
    c.trials = 800;
    c.dims = parse_dims_list("2x2,3x2,3x3,2+3x2");
    c.tolerances["theorem6.relative"] = 1e-10;
  } else if (name == "corollary7") {
    c.trials = 200;
    c.dims = parse_dims_list("2x2,3x2");
    c.tolerances["corollary7.relative"] = 1e-9;
  } else if (name == "lemma8") {
    c.trials = 200;
    c.dims = parse_dims_list("2,3,4,2+3");
    c.tolerances["lemma8.agreement"] = 1e-8;
    c.tolerances["lemma8.recomposition"] = 1e-9;
    c.param_grid = alpha_z_grid({1.5, 2.0, 3.0});
  } else if (name == "lemma9") {
    c.trials = 100;
    c.dims = parse_dims_list("2,3");
    c.tolerances["lemma9.relative"] = 1e-10;
    c.param_grid = sandwiched_grid({0.5, 0.7, 1.5, 2.0, 3.0});
  } else if (name == "prop11") {
    c.trials = 200;
    c.dims = parse_dims_list("2x2,2x3,3x2,3x3");
    c.tolerances["prop11.q_relative"] = 1e-9;
    c.tolerances["prop11.d_absolute"] = 1e-8;
    c.param_grid = alpha_z_grid({0.3, 0.5, 0.7, 1.5, 2.0, 3.0});
  } else if (name == "appendixA") {
    c.trials = 300;
    c.dims = parse_dims_list("2x2,3x2,2+3x2");
    c.tolerances["appendixA.spectral"] = 1e-9;
    c.tolerances["appendixA.multiplicative"] = 1e-9;
    c.tolerances["appendixA.algebra"] = 1e-12;
  } else if (name == "dpi") {
    c.trials = 150;
    c.dims = parse_dims_list("2,3,2x2");
    c.tolerances["dpi.slack"] = 1e-9;
    c.param_grid = sandwiched_grid({0.5, 0.7, 1.5, 2.0});
  } else if (name == "classical") {
    c.trials = 200;
    c.dims = parse_dims_list("2,3,2+3");
    c.tolerances["classical.relative"] = 1e-12;
    c.param_grid = alpha_z_grid({0.3, 0.5, 0.7, 1.5, 2.0, 3.0});
    const auto sw = sandwiched_grid({0.5, 0.7, 1.5, 2.0, 3.0});
    c.param_grid.insert(c.param_grid.end(), sw.begin(), sw.end());
  } else {
    throw UsageError("unknown suite '" + std::string(name) + "'");
  }
  return c;
}

void validate(const SuiteConfig& config) {
  if (std::find(kSuiteNames.begin(), kSuiteNames.end(), config.suite_name) == kSuiteNames.end()) {
    throw UsageError("unknown suite '" + config.suite_name + "'");
  }
  if (config.trials == 0) throw UsageError("trials must be at least 1");
  if (config.dims.empty()) throw UsageError("at least one dims profile is required");
  for (const auto& [key, tol] : config.tolerances) {
    if (!(tol > 0.0)) throw UsageError("tolerance '" + key + "' must be positive");
  }
}

SuiteResult run_suite(const SuiteConfig& config) {
  validate(config);
  SuiteResult result;
  result.config = config;
  result.trials.resize(config.trials);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= config.trials) return;
      try {
        result.trials[i] = run_trial(config, i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads,
                                                          static_cast<unsigned>(config.trials)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  for (const TrialReport& t : result.trials) {
    if (!t.pass) ++result.failures;
    for (const Residual& r : t.residuals) {
      double& slot = result.max_residuals[r.tolerance_key];
      slot = std::max(slot, r.value);
    }
  }
  return result;
}

}  // namespace nclp
