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

// Model files are JSON documents:
//
//   {
//     "label": "qubit dephasing",
//     "dim": 2,
//     "omega0": 0.0,
//     "hamiltonian": [[[0.5, 0], [0, 0]], [[0, 0], [-0.5, 0]]],
//     "noise_ops": [ <matrix>, ... ],
//     "charge": <matrix>                  (optional)
//   }
//
// A matrix is a list of rows; an entry is [re, im] or a bare real number.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "qfib/error_correction.hpp"
#include "qfib/lindblad_model.hpp"

namespace qfib {

/// Malformed input file. The message carries line/column when known.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelFile {
  MarkovModel model;
  std::optional<ComplexMatrix> charge;
};

ModelFile parse_model(const std::string& text, const std::string& source = "<input>");
ModelFile read_model_file(const std::string& path);
std::string serialize_model(const MarkovModel& model,
                            const std::optional<ComplexMatrix>& charge = std::nullopt);

/// {"rho": <matrix>} or {"psi": <vector>}.
ComplexMatrix parse_state(const std::string& text, const std::string& source = "<input>");
/// {"ancilla_dim": n, "phi": <vector>, "xi": <vector>}.
CodePair parse_code(const std::string& text, const std::string& source = "<input>");

std::string read_text_file(const std::string& path);

}  // namespace qfib
