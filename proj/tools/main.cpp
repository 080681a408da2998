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

#include <iostream>

#include "CLI11.hpp"
#include "qfib/commands.hpp"

namespace cli = qfib::cli;

int main(int argc, char** argv) {
  CLI::App app{"qfibound: time scaling of quantum Fisher information under Markovian noise"};
  app.set_version_flag("--version", cli::version());
  app.require_subcommand(1);

  cli::CheckSpanOptions span;
  auto* c_span = app.add_subcommand("check-span", "Decide whether H lies in the noise span");
  c_span->add_option("model", span.model_path, "Model file (JSON)")->required();
  c_span->add_option("--sectors", span.sectors, "none | charge")->capture_default_str();
  c_span->add_option("--tol", span.tol, "Membership tolerance")->capture_default_str();
  c_span->add_option("--json", span.json_path, "Write a JSON report here");

  cli::BoundOptions bound;
  auto* c_bound = app.add_subcommand("bound", "Linear-in-T QFI bound coefficient");
  c_bound->add_option("model", bound.model_path, "Model file (JSON)")->required();
  c_bound->add_option("--sectors", bound.sectors, "none | charge")->capture_default_str();
  c_bound->add_option("--sector-index", bound.sector_index, "Physical sector (0 = largest charge)");
  c_bound->add_option("--tol", bound.tol, "Solver tolerance")->capture_default_str();
  c_bound->add_option("--method", bound.method, "ipm | bisection")->capture_default_str();
  c_bound->add_flag("--cross-check", bound.cross_check, "Also run the other method");
  c_bound->add_option("--json", bound.json_path, "Write a JSON report here");

  cli::QfiSimOptions sim;
  auto* c_sim = app.add_subcommand("qfi-sim", "Simulate the QFI and compare with the bound");
  c_sim->add_option("model", sim.model_path, "Model file (JSON)")->required();
  c_sim->add_option("--sectors", sim.sectors, "none | charge")->capture_default_str();
  c_sim->add_option("--sector-index", sim.sector_index, "Physical sector for the bound");
  c_sim->add_option("--T", sim.T_list, "Final times")->delimiter(',')->capture_default_str();
  c_sim->add_option("--dt", sim.dt, "RK4 step")->capture_default_str();
  c_sim->add_option("--input", sim.input, "max-entangled | state file")->capture_default_str();
  c_sim->add_option("--csv", sim.csv_path, "Write T,qfi,bound,margin rows here");
  c_sim->add_option("--json", sim.json_path, "Write a JSON report here");

  cli::EcOptions ec;
  auto* c_ec = app.add_subcommand("ec", "Check and simulate an error-correction code");
  c_ec->add_option("model", ec.model_path, "Model file (JSON)")->required();
  c_ec->add_option("--code", ec.code, "max-entangled | universal | code file")->capture_default_str();
  c_ec->add_flag("--simulate", ec.simulate, "Run the corrected evolution");
  c_ec->add_option("--T", ec.T_list, "Final times")->delimiter(',')->capture_default_str();
  c_ec->add_option("--dt", ec.dt, "Correction interval")->capture_default_str();
  c_ec->add_option("--csv", ec.csv_path, "Write T,qfi,reference rows here");
  c_ec->add_option("--json", ec.json_path, "Write a JSON report here");

  cli::ScalingOptions sc;
  auto* c_sc = app.add_subcommand("scaling", "Many-body scaling bound for Z-string models");
  c_sc->add_option("--N", sc.N, "Number of qubits")->capture_default_str();
  c_sc->add_option("--k", sc.k, "Hamiltonian locality")->capture_default_str();
  c_sc->add_option("--l", sc.l, "Noise locality")->capture_default_str();
  c_sc->add_option("--n", sc.n, "Subchannel size (default: smallest that works)");
  c_sc->add_option("--gamma", sc.gamma, "Noise rate")->capture_default_str();
  c_sc->add_option("--table", sc.table_klmax, "Emit the grid 1 <= k, l <= klmax");
  c_sc->add_option("--csv", sc.csv_path, "Write the table here");
  c_sc->add_option("--json", sc.json_path, "Write a JSON report here");

  cli::ExportOptions ex;
  auto* c_ex = app.add_subcommand("export", "Write a built-in example model as a model file");
  c_ex->add_option("name", ex.name, "Zoo model name");
  c_ex->add_option("-o,--output", ex.out_path, "Output path (default: stdout)");
  c_ex->add_flag("--list", ex.list, "List the available models");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitError;
  }

  if (*c_span) return cli::cmd_check_span(span, std::cout, std::cerr);
  if (*c_bound) return cli::cmd_bound(bound, std::cout, std::cerr);
  if (*c_sim) return cli::cmd_qfi_sim(sim, std::cout, std::cerr);
  if (*c_ec) return cli::cmd_ec(ec, std::cout, std::cerr);
  if (*c_sc) return cli::cmd_scaling(sc, std::cout, std::cerr);
  if (*c_ex) return cli::cmd_export(ex, std::cout, std::cerr);
  return cli::kExitError;
}
