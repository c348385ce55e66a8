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

// Command-line front end. Kept as a library so tests can drive it without a
// subprocess.

#ifndef NCLP_TOOLS_CLI_HPP_
#define NCLP_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace nclp::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kMalformed = 1;     // malformed input or bad usage
inline constexpr int kPrecondition = 2;  // precondition, domain or shape error
inline constexpr int kConditioning = 3;
inline constexpr int kSuiteFailed = 4;   // suite ran but some trial failed

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nclp::cli

#endif  // NCLP_TOOLS_CLI_HPP_
