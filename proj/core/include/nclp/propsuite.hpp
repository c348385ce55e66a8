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

// Named invariant suites over seeded random instances.

#ifndef NCLP_PROPSUITE_HPP_
#define NCLP_PROPSUITE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nclp/algebra.hpp"
#include "nclp/config.hpp"
#include "nclp/divergence.hpp"
#include "nclp/tensorprod.hpp"

namespace nclp {

// "2", "2+3" name a single algebra; "2x2", "2+3x2" a tensor pair.
struct DimsProfile {
  BlockAlgebra left;
  std::optional<BlockAlgebra> right;

  bool is_tensor() const { return right.has_value(); }
  // The algebra a single-algebra suite draws on: left, or left (x) right.
  BlockAlgebra combined() const;
  // The pair a tensor suite draws on: left (x) right, or left (x) left.
  TensorAlgebra tensor() const;
  std::string label() const;
};

// Throws UsageError on malformed text.
DimsProfile parse_dims_profile(std::string_view text);
// Comma-separated list of profiles.
std::vector<DimsProfile> parse_dims_list(std::string_view text);

struct SuiteConfig {
  std::string suite_name;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::vector<DimsProfile> dims;
  std::map<std::string, double> tolerances;
  std::vector<DivergenceParams> param_grid;
  NumericConfig numeric;
  // Worker threads. Does not affect results.
  unsigned threads = 1;
};

std::span<const std::string_view> suite_names();

// Defaults for a named suite. Throws UsageError for an unknown name.
SuiteConfig default_suite_config(std::string_view name);

// Throws UsageError when trials == 0, dims is empty or a tolerance is not
// positive.
void validate(const SuiteConfig& config);

struct Residual {
  std::string name;
  double value = 0.0;
  std::string tolerance_key;
  double tolerance = 0.0;
  // Recorded-only residuals never fail a trial.
  bool asserted = true;

  bool ok() const { return !asserted || value <= tolerance; }
};

struct TrialReport {
  std::size_t trial_index = 0;
  std::uint64_t fingerprint = 0;
  std::string dims;
  std::vector<std::string> tags;
  std::map<std::string, double> summary;
  std::vector<Residual> residuals;
  bool pass = false;
};

struct SuiteResult {
  SuiteConfig config;
  std::vector<TrialReport> trials;  // ordered by trial_index
  std::size_t failures = 0;
  // Largest residual per tolerance key over all trials.
  std::map<std::string, double> max_residuals;
};

// Trial t draws profile dims[t % dims.size()] from RandomStream(seed, t).
SuiteResult run_suite(const SuiteConfig& config);

}  // namespace nclp

#endif  // NCLP_PROPSUITE_HPP_
