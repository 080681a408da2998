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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfib/bound_solver.hpp"
#include "qfib/lindblad_model.hpp"

namespace qfib {

struct PropagationResult {
  ComplexMatrix rho;
  /// d rho / d omega at omega0.
  ComplexMatrix drho;
  std::vector<double> times;
  /// |Tr rho - 1| at the final time; not corrected.
  double trace_error = 0.0;
  /// rho at every entry of `times` when requested.
  std::vector<ComplexMatrix> trajectory;
};

/// Fixed-step RK4 for rho and d rho / d omega:
///   rho'  = L(rho),   drho' = L(drho) - i [H, rho].
/// The number of steps is round(T / dt); the step is adjusted to land on T.
/// With `with_ancilla` the state lives on system (x) ancilla of equal size.
PropagationResult propagate(const MarkovModel& model, const ComplexMatrix& rho0, double T, double dt,
                            bool with_ancilla, bool keep_trajectory = false);

/// Same integration on system (x) ancilla for any ancilla size; the model
/// acts on the system factor only. Costs a factor ancilla_dim less than
/// propagating with_ancilla(model, ancilla_dim) directly.
PropagationResult propagate_extended(const MarkovModel& model, const ComplexMatrix& rho0,
                                     Eigen::Index ancilla_dim, double T, double dt,
                                     bool keep_trajectory = false);

/// 2 sum_ab |<a|drho|b>|^2 / (l_a + l_b) over pairs with l_a + l_b > eps_cut.
double qfi_of_state(const ComplexMatrix& rho, const ComplexMatrix& drho, double eps_cut = 1e-12);

/// |Phi> = sum_i |i>|i> / sqrt(d) as a density matrix on d^2.
ComplexMatrix maximally_entangled_state(Eigen::Index dim);
ComplexVector maximally_entangled_vector(Eigen::Index dim);

/// Throws DomainError unless rho is unit trace and PSD to -1e-9.
void check_density_matrix(const ComplexMatrix& rho, double trace_tol = 1e-8);

struct BoundCheckRow {
  double T = 0.0;
  double qfi = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  double slack = 0.0;
  /// |QFI(dt) - QFI(2 dt)| / 15.
  double error_estimate = 0.0;
  bool passed = true;
};

struct BoundCheckReport {
  std::vector<BoundCheckRow> rows;
  bool all_passed = true;
};

/// Simulated QFI against 4 alpha T for every T. Without rho0 the input is the
/// maximally entangled probe-ancilla state.
BoundCheckReport verify_bound(const MarkovModel& model, const std::optional<ComplexMatrix>& rho0,
                              const std::vector<double>& T_list, const BoundResult& bound,
                              double dt = 1e-3);

/// "T,qfi,bound,margin" rows with a header.
std::string bound_check_csv(const BoundCheckReport& report);

}  // namespace qfib
