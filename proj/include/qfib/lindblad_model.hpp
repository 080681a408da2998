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

#include <string>
#include <vector>

#include "qfib/operator_core.hpp"

namespace qfib {

/// Markovian master equation
///
///   d rho / dt = -i omega [H, rho] + sum_j (L_j rho L_j^dag - 1/2 {L_j^dag L_j, rho})
///
/// where omega is the estimated frequency. `omega0` is the working point at
/// which derivatives with respect to omega are taken.
struct MarkovModel {
  Eigen::Index dim = 0;
  HermitianMatrix hamiltonian;
  std::vector<ComplexMatrix> noise_ops;
  double omega0 = 0.0;
  std::string label;

  /// Validates shapes and finiteness; throws DimensionError / DomainError.
  void validate() const;
  std::size_t num_noise_ops() const { return noise_ops.size(); }
};

MarkovModel make_model(const ComplexMatrix& hamiltonian, std::vector<ComplexMatrix> noise_ops,
                       double omega0 = 0.0, std::string label = {});

/// Orthogonal projectors onto the eigenspaces of a conserved charge, ordered
/// by descending charge eigenvalue.
struct SectorDecomposition {
  std::vector<HermitianMatrix> projectors;
  std::vector<double> charges;

  std::size_t size() const { return projectors.size(); }
  Eigen::Index dim() const { return projectors.empty() ? 0 : projectors.front().dim(); }
  /// Single sector covering the whole space.
  static SectorDecomposition trivial(Eigen::Index dim);
  /// Throws DomainError if the projectors are not a resolution of identity.
  void validate(double tol = 1e-10) const;
};

struct CanonicalizationReport {
  MarkovModel model;
  /// Hamiltonian term produced by removing the trace of the noise operators.
  /// It is not folded into model.hamiltonian.
  HermitianMatrix induced_hamiltonian_shift;
  bool mixing_applied = false;
  /// |Tr L_j| / dim of each input operator, i.e. the dropped identity weight.
  std::vector<double> removed_trace;
  /// Number of operators dropped as null after orthogonalization.
  std::size_t dropped_null_ops = 0;
};

/// Traceless, Hilbert-Schmidt orthogonal noise operators generating the same
/// dissipator. Orthogonalization diagonalizes the Gram matrix
/// G_kj = Tr L_k^dag L_j and remixes by its eigenvector unitary; directions
/// with Gram eigenvalue below 1e-12 of the largest are dropped.
CanonicalizationReport canonicalize(const MarkovModel& model);

/// True when the noise operators are traceless and mutually orthogonal.
bool is_canonical(const MarkovModel& model, double tol = 1e-10);

/// Model compressed to the range of the projector: H -> V^dag H V and
/// L_j -> V^dag L_j V with V an orthonormal basis of range(P).
MarkovModel restrict_model(const MarkovModel& model, const ComplexMatrix& projector);

/// Eigenspace projectors of `charge`. Eigenvalues closer than
/// 1e-8 * ||charge|| are grouped into one sector.
SectorDecomposition sectorize(const MarkovModel& model, const ComplexMatrix& charge);

/// Noisy part of the generator: sum_j L_j rho L_j^dag - 1/2 {L_j^dag L_j, rho}.
ComplexMatrix dissipator_apply(const MarkovModel& model, const ComplexMatrix& rho);

/// Full generator at frequency omega.
ComplexMatrix liouvillian_apply(const MarkovModel& model, const ComplexMatrix& rho, double omega);

/// Same model with every operator extended trivially to system (x) ancilla.
MarkovModel with_ancilla(const MarkovModel& model, Eigen::Index ancilla_dim);

}  // namespace qfib
