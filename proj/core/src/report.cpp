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

#include "nclp/report.hpp"

#include <cstdio>

#include "nclp/random.hpp"

#ifndef NCLP_VERSION
#define NCLP_VERSION "0.0.0"
#endif

namespace nclp {
namespace {

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string_view tool_version() { return NCLP_VERSION; }

Json numeric_config_json(const NumericConfig& config) {
  Json j;
  j["eps_rel"] = config.eps_rel;
  j["log_base"] = kLogBase;
  j["eigensolver"] = kEigensolverId;
  j["svd"] = kSvdId;
  j["prng"] = kPrngId;
  return j;
}

Json trial_json(const TrialReport& trial) {
  Json j;
  j["trial_index"] = trial.trial_index;
  j["fingerprint"] = hex64(trial.fingerprint);
  j["dims"] = trial.dims;
  j["tags"] = trial.tags;
  Json summary = Json::object();
  for (const auto& [key, value] : trial.summary) summary[key] = json_number(value);
  j["summary"] = std::move(summary);
  Json residuals = Json::object();
  for (const Residual& r : trial.residuals) {
    Json entry;
    entry["value"] = json_number(r.value);
    entry["tolerance"] = r.tolerance_key;
    if (!r.asserted) entry["asserted"] = false;
    residuals[r.name] = std::move(entry);
  }
  j["residuals"] = std::move(residuals);
  j["pass"] = trial.pass;
  return j;
}

Json suite_report(const SuiteResult& result) {
  const SuiteConfig& c = result.config;
  Json config;
  config["suite"] = c.suite_name;
  config["trials"] = c.trials;
  config["seed"] = c.seed;
  Json dims = Json::array();
  for (const DimsProfile& d : c.dims) dims.push_back(d.label());
  config["dims"] = std::move(dims);
  const Json numeric = numeric_config_json(c.numeric);
  for (const auto& [key, value] : numeric.items()) config[key] = value;
  Json tolerances = Json::object();
  for (const auto& [key, value] : c.tolerances) tolerances[key] = value;
  config["tolerances"] = std::move(tolerances);
  Json grid = Json::array();
  for (const DivergenceParams& p : c.param_grid) grid.push_back(p.describe());
  config["param_grid"] = std::move(grid);

  Json report;
  report["tool_version"] = tool_version();
  report["config"] = std::move(config);
  Json results = Json::array();
  for (const TrialReport& t : result.trials) results.push_back(trial_json(t));
  report["results"] = std::move(results);
  Json residuals = Json::object();
  for (const auto& [key, value] : result.max_residuals) {
    residuals[key] = {{"max", json_number(value)}, {"tolerance", c.tolerances.at(key)}};
  }
  report["residuals"] = std::move(residuals);
  report["trials_failed"] = result.failures;
  report["status"] = result.failures == 0 ? "ok" : "fail";
  return report;
}

Json error_report(Json config, std::string_view message) {
  Json report;
  report["tool_version"] = tool_version();
  report["config"] = std::move(config);
  report["results"] = Json::array();
  report["residuals"] = Json::object();
  report["error"] = message;
  report["status"] = "error";
  return report;
}

}  // namespace nclp
