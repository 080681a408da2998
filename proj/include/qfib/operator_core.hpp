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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qfib {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Dense Hermitian operator. Construction symmetrizes the input, so the
/// stored matrix is exactly self-adjoint; the size of the correction that
/// was applied is kept for diagnostics.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m);

  static HermitianMatrix zero(Eigen::Index dim);
  static HermitianMatrix identity(Eigen::Index dim);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  /// ||A - A^dagger||_F / 2 of the matrix handed to the constructor.
  double symmetrization_correction() const { return correction_; }

  operator const ComplexMatrix&() const { return m_; }

 private:
  ComplexMatrix m_;
  double correction_ = 0.0;
};

/// Thrown on shape mismatches between operators.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an input violates a mathematical precondition (non-Hermitian,
/// not a projector, not a density matrix, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Symmetrization threshold above which ingestion of a "Hermitian" operator
/// is worth a warning, relative to ||A||_F.
inline constexpr double kHermitianWarnThreshold = 1e-9;

/// Hermitian invariant tolerance: ||A - A^dagger||_F <= tol * max(1, ||A||_F).
inline constexpr double kHermitianTolerance = 1e-12;

bool is_square(const ComplexMatrix& a);
bool all_finite(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol = kHermitianTolerance);

/// (A^H, i A^AH) with A^H = (A + A^dagger)/2 and A^AH = (A - A^dagger)/2,
/// so that A = first - i * second and both outputs are Hermitian.
std::pair<HermitianMatrix, HermitianMatrix> herm_anti_split(const ComplexMatrix& a);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& a);

/// Tr(A^dagger B).
Complex hilbert_schmidt_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Splits a Hermitian A into its positive and negative spectral parts,
/// A = P - Q with P, Q >= 0 and PQ = 0.
std::pair<HermitianMatrix, HermitianMatrix> positive_negative_split(const ComplexMatrix& a);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Eigen-decomposition of a Hermitian matrix with ascending eigenvalues.
struct HermitianEigen {
  RealVector values;
  ComplexMatrix vectors;
};
HermitianEigen hermitian_eigen(const ComplexMatrix& a);

/// Orthonormal basis (columns) for the range of a Hermitian projector.
ComplexMatrix projector_range(const ComplexMatrix& p);

/// Pauli matrices and qubit helpers.
namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

/// Occupation-number basis of `num_modes` bosonic modes with total particle
/// number at most `max_total_particles`, in lexicographic order of the
/// occupation tuples (n_1, ..., n_M).
class FockBasis {
 public:
  FockBasis(int num_modes, int max_total_particles);

  int num_modes() const { return num_modes_; }
  int max_total_particles() const { return cutoff_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<int>& occupation(std::size_t index) const { return states_[index]; }
  int total(std::size_t index) const;
  /// Index of an occupation tuple, or -1 when it lies outside the truncation.
  long index_of(const std::vector<int>& occupation) const;

 private:
  int num_modes_;
  int cutoff_;
  std::vector<std::vector<int>> states_;
};

/// Annihilator a_i (1-based mode index) on the truncated Fock space.
ComplexMatrix truncated_annihilator(int mode_index, int num_modes, int max_total_particles);

/// Number operator a_i^dagger a_i (diagonal, exact on the truncated space).
ComplexMatrix truncated_number(int mode_index, int num_modes, int max_total_particles);

/// Orthogonal projector onto the occupation tuples with total exactly N.
ComplexMatrix fixed_total_number_projector(int num_modes, int total, int cutoff);

/// Haar-distributed unitary from a seeded generator; used by property tests
/// and randomized diagnostics.
template <typename Rng>
ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng);

template <typename Rng>
ComplexMatrix random_complex_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

}  // namespace qfib

#include "qfib/detail/random.hpp"
