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

#include <vector>

#include "qfib/lindblad_model.hpp"

namespace qfib {

/// Code states on probe (x) ancilla; probe index is the slow one.
struct CodePair {
  ComplexVector phi;
  ComplexVector xi;
  Eigen::Index ancilla_dim = 1;

  /// Throws DomainError unless both states are unit and orthogonal.
  void validate(Eigen::Index probe_dim) const;
};

struct EcReport {
  /// |<phi|H|xi>|
  double cond_a_value = 0.0;
  /// max_jk |<phi|L_k^dag L_j|xi>| and |<phi|L_j|xi>|
  double cond_b_residual = 0.0;
  /// max_jk |<phi|L_k^dag L_j|phi> - <xi|L_k^dag L_j|xi>|
  double cond_c_residual = 0.0;
  /// Not part of the verdict: max_j |<xi|L_j|phi>| and
  /// |<phi|L_j|phi> - <xi|L_j|xi>|. The recovery is exact to first order
  /// only when these vanish too.
  double aux_residual = 0.0;
  double tol_a = 1e-8;
  double tol_bc = 1e-8;
  bool verdict = false;
};

struct RecoveryMap {
  std::vector<ComplexMatrix> kraus_ops;

  ComplexMatrix apply(const ComplexMatrix& rho) const;
  /// || sum R^dag R - 1 ||_F
  double trace_residual() const;
};

EcReport check_conditions(const MarkovModel& model, const CodePair& code, double tol_a = 1e-8,
                          double tol_bc = 1e-8);

/// H_perp of the model, i.e. the part of H orthogonal to the noise span.
HermitianMatrix perpendicular_hamiltonian(const MarkovModel& model);

/// |phi> = sum_i |ii>/sqrt(d), |xi> ∝ (H_perp (x) 1)|phi>.
CodePair maximally_entangled_code(const MarkovModel& model);

/// H_perp = P - Q with P, Q >= 0 and PQ = 0; |p>, |q> purify P/Tr P and
/// Q/Tr Q on orthogonal ancilla subspaces; phi, xi = (|p> +- |q>)/sqrt(2).
/// Ancilla dimension is rank P + rank Q.
CodePair universal_code(const MarkovModel& model);

/// Kraus operators R_l = |phi><e_l| + |xi><f_l| plus |phi><t| dump operators
/// on the complement, where e_l spans {phi, L_j phi} and f_l = U e_l spans
/// {xi, L_j xi}. Throws DomainError when the code conditions fail.
RecoveryMap build_recovery(const MarkovModel& model, const CodePair& code, double tol = 1e-8);

struct EcSimulation {
  double qfi = 0.0;
  double c = 0.0;
  /// Part of C([H, |phi><phi|]) orthogonal to |xi><phi| - |phi><xi|.
  double c_remainder = 0.0;
};

/// Repeated rho <- C(rho + dt L(rho)), drho <- C(drho + dt L(drho) - i dt [H, rho])
/// at omega0 = 0 from rho = |phi><phi|.
EcSimulation simulate_ec(const MarkovModel& model, const CodePair& code, const RecoveryMap& recovery,
                         double T, double dt);

}  // namespace qfib
