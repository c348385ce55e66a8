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

#include "nclp/matrix_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "nclp/errors.hpp"

namespace nclp {
namespace {

const nlohmann::json& field(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw MalformedInput(where + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

Eigen::MatrixXd read_real(const nlohmann::json& rows, int n, const std::string& where) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw MalformedInput(where + ": expected " + std::to_string(n) + " rows");
  }
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r) {
    const nlohmann::json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw MalformedInput(where + ": row " + std::to_string(r) + " must have " +
                           std::to_string(n) + " entries");
    }
    for (int c = 0; c < n; ++c) {
      const nlohmann::json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) throw MalformedInput(where + ": entries must be numbers");
      const double d = v.get<double>();
      if (!std::isfinite(d)) throw MalformedInput(where + ": entries must be finite");
      m(r, c) = d;
    }
  }
  return m;
}

Json rows_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

PositiveFunctional checked_functional(const Element& h, const NumericConfig& config,
                                      const std::string& where) {
  const double scale = std::max(1.0, h.frobenius_norm());
  if (distance(h, h.adjoint()) > kHermitianTolerance * scale) {
    throw MalformedInput(where + ": functional density is not Hermitian");
  }
  try {
    return PositiveFunctional(h, config);
  } catch (const DomainError& e) {
    throw MalformedInput(where + ": functional density is not positive semidefinite");
  }
}

}  // namespace

MatrixFile parse_matrix_file(std::string_view text, const NumericConfig& config) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw MalformedInput("matrix file must be a JSON object");

  const nlohmann::json& dims_json = field(field(doc, "algebra", "matrix file"), "blocks", "algebra");
  if (!dims_json.is_array() || dims_json.empty()) {
    throw MalformedInput("algebra.blocks must be a non-empty array");
  }
  std::vector<int> dims;
  for (const nlohmann::json& d : dims_json) {
    if (!d.is_number_integer() || d.get<long long>() < 1 || d.get<long long>() > 4096) {
      throw MalformedInput("algebra.blocks entries must be positive integers");
    }
    dims.push_back(d.get<int>());
  }
  const BlockAlgebra algebra(dims);

  MatrixKind kind = MatrixKind::kElement;
  const nlohmann::json& kind_json = field(doc, "kind", "matrix file");
  if (kind_json == "functional") {
    kind = MatrixKind::kFunctional;
  } else if (kind_json != "element") {
    throw MalformedInput("kind must be \"element\" or \"functional\"");
  }

  const nlohmann::json& blocks_json = field(field(doc, "matrix", "matrix file"), "blocks", "matrix");
  if (!blocks_json.is_array() || blocks_json.size() != dims.size()) {
    throw MalformedInput("matrix.blocks must list one block per algebra block");
  }
  std::vector<Matrix> blocks;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const std::string where = "matrix.blocks[" + std::to_string(k) + "]";
    const nlohmann::json& b = blocks_json[k];
    const Eigen::MatrixXd re = read_real(field(b, "re", where), dims[k], where + ".re");
    Eigen::MatrixXd im = Eigen::MatrixXd::Zero(dims[k], dims[k]);
    if (b.contains("im")) im = read_real(b.at("im"), dims[k], where + ".im");
    Matrix m(dims[k], dims[k]);
    m.real() = re;
    m.imag() = im;
    blocks.push_back(std::move(m));
  }
  Element element(algebra, std::move(blocks));
  if (kind == MatrixKind::kFunctional) {
    element = checked_functional(element, config, "functional").density();
  }
  return {kind, std::move(element)};
}

MatrixFile load_matrix_file(const std::filesystem::path& path, const NumericConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_matrix_file(ss.str(), config);
  } catch (const MalformedInput& e) {
    throw MalformedInput(path.string() + ": " + e.what());
  }
}

PositiveFunctional load_functional(const std::filesystem::path& path,
                                   const NumericConfig& config) {
  const MatrixFile file = load_matrix_file(path, config);
  if (file.kind == MatrixKind::kFunctional) return PositiveFunctional(file.element, config);
  return checked_functional(file.element, config, path.string());
}

Json matrix_file_json(const Element& element, MatrixKind kind) {
  Json doc;
  const std::span<const int> dims = element.algebra().block_dims();
  doc["algebra"]["blocks"] = std::vector<int>(dims.begin(), dims.end());
  Json blocks = Json::array();
  for (const Matrix& b : element.blocks()) {
    blocks.push_back({{"re", rows_json(b.real())}, {"im", rows_json(b.imag())}});
  }
  doc["matrix"]["blocks"] = std::move(blocks);
  doc["kind"] = kind == MatrixKind::kFunctional ? "functional" : "element";
  return doc;
}

std::string serialize_matrix_file(const Element& element, MatrixKind kind) {
  return dump_json(matrix_file_json(element, kind));
}

void save_matrix_file(const std::filesystem::path& path, const Element& element, MatrixKind kind) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << serialize_matrix_file(element, kind);
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace nclp
