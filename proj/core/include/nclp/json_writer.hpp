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

#ifndef NCLP_JSON_WRITER_HPP_
#define NCLP_JSON_WRITER_HPP_

#include <string>

#include <nlohmann/json.hpp>

namespace nclp {

using Json = nlohmann::ordered_json;

// Deterministic serialization: keys in insertion order, floating-point values
// with 17 significant digits, non-finite values as the strings "inf", "-inf"
// and "nan". indent < 0 writes a single line.
std::string dump_json(const Json& value, int indent = 2);

// Number, or "inf"/"-inf"/"nan" for non-finite values.
Json json_number(double value);

}  // namespace nclp

#endif  // NCLP_JSON_WRITER_HPP_
