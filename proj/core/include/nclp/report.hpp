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

// Run reports: {"tool_version", "config", "results", "residuals", "status"}.

#ifndef NCLP_REPORT_HPP_
#define NCLP_REPORT_HPP_

#include <string>
#include <string_view>

#include "nclp/config.hpp"
#include "nclp/json_writer.hpp"
#include "nclp/propsuite.hpp"

namespace nclp {

std::string_view tool_version();

// Numeric settings shared by every report: eps_rel, log base, solver and
// PRNG identifiers.
Json numeric_config_json(const NumericConfig& config);

Json trial_json(const TrialReport& trial);

// Complete report for a suite run. status is "ok" when every trial passed,
// "fail" otherwise.
Json suite_report(const SuiteResult& result);

// Report skeleton for a run that stopped with an error.
Json error_report(Json config, std::string_view message);

}  // namespace nclp

#endif  // NCLP_REPORT_HPP_
