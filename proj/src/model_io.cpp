// Copyright 2026 The qfibound Authors
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

#include "qfib/model_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qfib {

using nlohmann::json;

namespace {

// Line and column (1-based) of a byte offset.
std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // byte is one past the offending character.
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream msg;
    msg << source << ":" << line << ":" << col << ": JSON syntax error: " << e.what();
    throw ParseError(msg.str());
  }
}

[[noreturn]] void fail(const std::string& source, const std::string& where, const std::string& what) {
  throw ParseError(source + ": " + where + ": " + what);
}

Complex entry(const json& v, const std::string& source, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  fail(source, where, "expected a number or a [re, im] pair");
}

ComplexMatrix matrix(const json& v, const std::string& source, const std::string& where) {
  if (!v.is_array() || v.empty()) fail(source, where, "expected a non-empty list of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  if (!v[0].is_array()) fail(source, where + "[0]", "expected a row");
  const auto cols = static_cast<Eigen::Index>(v[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = v[static_cast<std::size_t>(i)];
    const std::string rw = where + "[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      fail(source, rw, "rows must all have length " + std::to_string(cols));
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = entry(row[static_cast<std::size_t>(j)], source, rw + "[" + std::to_string(j) + "]");
    }
  }
  return m;
}

ComplexVector vector(const json& v, const std::string& source, const std::string& where) {
  if (!v.is_array() || v.empty()) fail(source, where, "expected a non-empty list");
  ComplexVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = entry(v[i], source, where + "[" + std::to_string(i) + "]");
  }
  return out;
}

json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ModelFile parse_model(const std::string& text, const std::string& source) {
  const json doc = parse_json(text, source);
  if (!doc.is_object()) fail(source, "document", "expected an object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
    fail(source, "dim", "missing or not an integer");
  }
  const auto dim = doc["dim"].get<long>();
  if (dim <= 0) fail(source, "dim", "must be positive");
  if (!doc.contains("hamiltonian")) fail(source, "hamiltonian", "missing");
  const ComplexMatrix h = matrix(doc["hamiltonian"], source, "hamiltonian");
  if (h.rows() != dim || h.cols() != dim) fail(source, "hamiltonian", "shape does not match dim");
  std::vector<ComplexMatrix> ops;
  if (doc.contains("noise_ops")) {
    const auto& list = doc["noise_ops"];
    if (!list.is_array()) fail(source, "noise_ops", "expected a list of matrices");
    for (std::size_t j = 0; j < list.size(); ++j) {
      const std::string where = "noise_ops[" + std::to_string(j) + "]";
      ComplexMatrix l = matrix(list[j], source, where);
      if (l.rows() != dim || l.cols() != dim) fail(source, where, "shape does not match dim");
      ops.push_back(std::move(l));
    }
  }
  double omega0 = 0.0;
  if (doc.contains("omega0")) {
    if (!doc["omega0"].is_number()) fail(source, "omega0", "expected a number");
    omega0 = doc["omega0"].get<double>();
  }
  std::string label;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) fail(source, "label", "expected a string");
    label = doc["label"].get<std::string>();
  }
  ModelFile out;
  try {
    out.model = make_model(h, std::move(ops), omega0, label);
  } catch (const std::exception& e) {
    fail(source, "model", e.what());
  }
  if (doc.contains("charge") && !doc["charge"].is_null()) {
    ComplexMatrix c = matrix(doc["charge"], source, "charge");
    if (c.rows() != dim || c.cols() != dim) fail(source, "charge", "shape does not match dim");
    if (!is_hermitian(c, 1e-9)) fail(source, "charge", "not Hermitian");
    out.charge = std::move(c);
  }
  return out;
}

ModelFile read_model_file(const std::string& path) { return parse_model(read_text_file(path), path); }

std::string serialize_model(const MarkovModel& model, const std::optional<ComplexMatrix>& charge) {
  json doc;
  doc["label"] = model.label;
  doc["dim"] = model.dim;
  doc["omega0"] = model.omega0;
  doc["hamiltonian"] = to_json(model.hamiltonian.matrix());
  doc["noise_ops"] = json::array();
  for (const auto& l : model.noise_ops) doc["noise_ops"].push_back(to_json(l));
  if (charge) doc["charge"] = to_json(*charge);
  return doc.dump(2) + "\n";
}

ComplexMatrix parse_state(const std::string& text, const std::string& source) {
  const json doc = parse_json(text, source);
  if (!doc.is_object()) fail(source, "document", "expected an object");
  if (doc.contains("rho")) return matrix(doc["rho"], source, "rho");
  if (doc.contains("psi")) {
    ComplexVector psi = vector(doc["psi"], source, "psi");
    if (psi.norm() == 0.0) fail(source, "psi", "zero vector");
    psi.normalize();
    return psi * psi.adjoint();
  }
  fail(source, "document", "expected a \"rho\" or \"psi\" field");
}

CodePair parse_code(const std::string& text, const std::string& source) {
  const json doc = parse_json(text, source);
  if (!doc.is_object()) fail(source, "document", "expected an object");
  if (!doc.contains("ancilla_dim") || !doc["ancilla_dim"].is_number_integer()) {
    fail(source, "ancilla_dim", "missing or not an integer");
  }
  if (!doc.contains("phi")) fail(source, "phi", "missing");
  if (!doc.contains("xi")) fail(source, "xi", "missing");
  CodePair c;
  c.ancilla_dim = doc["ancilla_dim"].get<long>();
  c.phi = vector(doc["phi"], source, "phi");
  c.xi = vector(doc["xi"], source, "xi");
  return c;
}

}  // namespace qfib
