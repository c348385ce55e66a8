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

// JSON matrix files:
//   {"algebra": {"blocks": [n1, ...]},
//    "matrix": {"blocks": [{"re": [[...]], "im": [[...]]}, ...]},
//    "kind": "element" | "functional"}
// Rows are listed top to bottom. "im" may be omitted for real blocks.

#ifndef NCLP_MATRIX_FILE_HPP_
#define NCLP_MATRIX_FILE_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "nclp/algebra.hpp"
#include "nclp/config.hpp"
#include "nclp/functionals.hpp"
#include "nclp/json_writer.hpp"

namespace nclp {

enum class MatrixKind { kElement, kFunctional };

struct MatrixFile {
  MatrixKind kind = MatrixKind::kElement;
  Element element;
};

// Throws MalformedInput on syntax errors, missing or mistyped fields, shape
// mismatches, non-finite entries, or a functional that is not Hermitian
// within 1e-8 or not PSD after clipping.
MatrixFile parse_matrix_file(std::string_view text, const NumericConfig& config = {});
MatrixFile load_matrix_file(const std::filesystem::path& path, const NumericConfig& config = {});

// Reads a file as a positive functional. Element files are accepted when
// their matrix passes the same checks as a functional file.
PositiveFunctional load_functional(const std::filesystem::path& path,
                                   const NumericConfig& config = {});

Json matrix_file_json(const Element& element, MatrixKind kind);
std::string serialize_matrix_file(const Element& element, MatrixKind kind);
void save_matrix_file(const std::filesystem::path& path, const Element& element, MatrixKind kind);

}  // namespace nclp

#endif  // NCLP_MATRIX_FILE_HPP_
