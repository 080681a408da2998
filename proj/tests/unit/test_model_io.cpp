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

#include <gtest/gtest.h>

#include "qfib/model_io.hpp"
#include "qfib/model_zoo.hpp"

namespace qfib {
namespace {

TEST(ModelIo, RoundTripIsExact) {
  for (const auto& z : zoo_models()) {
    const std::string text = serialize_model(z.model, z.charge);
    const ModelFile back = parse_model(text, z.name);
    EXPECT_EQ(back.model.dim, z.model.dim);
    EXPECT_EQ(back.model.label, z.model.label);
    EXPECT_EQ(back.model.hamiltonian.matrix(), z.model.hamiltonian.matrix()) << z.name;
    ASSERT_EQ(back.model.noise_ops.size(), z.model.noise_ops.size());
    for (std::size_t j = 0; j < z.model.noise_ops.size(); ++j) {
      EXPECT_EQ(back.model.noise_ops[j], z.model.noise_ops[j]) << z.name;
    }
    EXPECT_EQ(back.charge.has_value(), z.charge.has_value());
    EXPECT_EQ(serialize_model(back.model, back.charge), text);
  }
}

TEST(ModelIo, BareNumbersAndDefaults) {
  const ModelFile f = parse_model(R"({"dim": 2, "hamiltonian": [[0.5, 0], [0, -0.5]],
                                      "noise_ops": [[[0, 1], [1, 0]]]})");
  EXPECT_EQ(f.model.omega0, 0.0);
  EXPECT_EQ(f.model.noise_ops.size(), 1u);
  EXPECT_EQ(f.model.noise_ops[0](0, 1), Complex(1, 0));
  EXPECT_FALSE(f.charge.has_value());
}

TEST(ModelIo, ComplexEntries) {
  const ModelFile f = parse_model(R"({"dim": 2, "hamiltonian": [[0, [0, -1]], [[0, 1], 0]]})");
  EXPECT_EQ(f.model.hamiltonian.matrix()(0, 1), Complex(0, -1));
  EXPECT_TRUE(f.model.noise_ops.empty());
}

TEST(ModelIo, SyntaxErrorHasLineAndColumn) {
  try {
    parse_model("{\n  \"dim\": 2,\n  \"hamiltonian\": [[1, 0], [0, 1]\n}", "bad.json");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("bad.json:4:"), std::string::npos) << msg;
  }
}

TEST(ModelIo, SchemaErrorsNameTheField) {
  auto expect_field = [](const std::string& text, const std::string& field) {
    try {
      parse_model(text, "m.json");
      ADD_FAILURE() << "no error for " << text;
    } catch (const ParseError& e) {
      EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
    }
  };
  expect_field(R"({"hamiltonian": [[1]]})", "dim");
  expect_field(R"({"dim": 2, "hamiltonian": [[1]]})", "hamiltonian");
  expect_field(R"({"dim": 1, "hamiltonian": [[1]], "noise_ops": [[[1, 2]]]})", "noise_ops");
  expect_field(R"({"dim": 1, "hamiltonian": [["x"]]})", "hamiltonian");
  expect_field(R"({"dim": 1, "hamiltonian": [[1]], "omega0": "fast"})", "omega0");
}

TEST(ModelIo, NonHermitianHamiltonianIsSymmetrized) {
  const ModelFile f = parse_model(R"({"dim": 2, "hamiltonian": [[0, 1], [0, 0]]})");
  EXPECT_EQ(f.model.hamiltonian.matrix()(0, 1), Complex(0.5, 0));
  EXPECT_GT(f.model.hamiltonian.symmetrization_correction(), 0.1);
}

TEST(ModelIo, States) {
  const ComplexMatrix rho = parse_state(R"({"psi": [1, [0, 1]]})");
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(rho(0, 1) - Complex(0, -0.5)), 0.0, 1e-15);
  const ComplexMatrix r2 = parse_state(R"({"rho": [[0.5, 0], [0, 0.5]]})");
  EXPECT_EQ(r2(1, 1), Complex(0.5, 0));
  EXPECT_THROW(parse_state(R"({"state": 1})"), ParseError);
}

TEST(ModelIo, Codes) {
  const CodePair c = parse_code(R"({"ancilla_dim": 1, "phi": [1, 0], "xi": [0, 1]})");
  EXPECT_EQ(c.ancilla_dim, 1);
  EXPECT_EQ(c.xi(1), Complex(1, 0));
  EXPECT_THROW(parse_code(R"({"phi": [1, 0], "xi": [0, 1]})"), ParseError);
}

TEST(ModelIo, MissingFile) {
  EXPECT_THROW(read_model_file("/nonexistent/model.json"), ParseError);
}

}  // namespace
}  // namespace qfib
