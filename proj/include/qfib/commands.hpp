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

// Subcommands of the qfibound tool. Each returns a process exit code and
// writes a human-readable report to `out`; a JSON report goes to json_path
// when one is given.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qfib::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
/// Simulated QFI exceeded the bound beyond the integrator slack.
inline constexpr int kExitViolation = 2;
/// H outside the noise span: the linear bound does not apply.
inline constexpr int kExitNotApplicable = 3;

std::string version();
std::string sha256_hex(const std::string& data);

struct CheckSpanOptions {
  std::string model_path;
  /// "none" or "charge" (eigenspaces of the model file's charge).
  std::string sectors = "none";
  double tol = 1e-9;
  std::string json_path;
};

struct BoundOptions {
  std::string model_path;
  std::string sectors = "none";
  std::optional<std::size_t> sector_index;
  double tol = 1e-8;
  /// "ipm" or "bisection"
  std::string method = "ipm";
  bool cross_check = false;
  std::string json_path;
};

struct QfiSimOptions {
  std::string model_path;
  std::string sectors = "none";
  std::optional<std::size_t> sector_index;
  std::vector<double> T_list{0.5, 1.0, 2.0};
  double dt = 1e-3;
  /// "max-entangled" or a path to a state file.
  std::string input = "max-entangled";
  std::string csv_path;
  std::string json_path;
};

struct EcOptions {
  std::string model_path;
  /// "max-entangled", "universal" or a path to a code file.
  std::string code = "max-entangled";
  bool simulate = false;
  std::vector<double> T_list{1.0};
  double dt = 1e-3;
  std::string csv_path;
  std::string json_path;
};

struct ScalingOptions {
  int N = 10;
  int k = 1;
  int l = 1;
  std::optional<int> n;
  double gamma = 1.0;
  /// Emit the whole 1 <= k, l <= klmax grid instead of a single row.
  std::optional<int> table_klmax;
  std::string csv_path;
  std::string json_path;
};

struct ExportOptions {
  std::string name;
  std::string out_path;
  bool list = false;
};

int cmd_check_span(const CheckSpanOptions& opt, std::ostream& out, std::ostream& err);
int cmd_bound(const BoundOptions& opt, std::ostream& out, std::ostream& err);
int cmd_qfi_sim(const QfiSimOptions& opt, std::ostream& out, std::ostream& err);
int cmd_ec(const EcOptions& opt, std::ostream& out, std::ostream& err);
int cmd_scaling(const ScalingOptions& opt, std::ostream& out, std::ostream& err);
int cmd_export(const ExportOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace qfib::cli
