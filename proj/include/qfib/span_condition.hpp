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

inline constexpr double kSpanRankThreshold = 1e-10;
inline constexpr double kSpanMembershipTol = 1e-9;

/// Real span of
///   {1, L_j^H, i L_j^AH, (L_j^dag L_j')^H, i (L_j^dag L_j')^AH}
/// over all ordered pairs (j, j'), treated as a subspace of the d^2
/// dimensional real vector space of Hermitian matrices.
struct NoiseSpan {
  Eigen::Index dim = 0;
  std::vector<HermitianMatrix> generators;
  std::vector<HermitianMatrix> orthonormal_basis;

  std::size_t rank() const { return orthonormal_basis.size(); }
  /// Orthogonal projection of a Hermitian matrix onto the span.
  ComplexMatrix project(const ComplexMatrix& h) const;
};

struct SpanReport {
  bool in_span = false;
  double residual = 0.0;
  HermitianMatrix h_parallel;
  HermitianMatrix h_perp;
  double tolerance_used = kSpanMembershipTol;
  /// Residual within a factor 10 of the tolerance (either side).
  bool marginal = false;
};

/// Isometric map Hermitian d x d -> R^{d^2}: diagonal entries first, then
/// sqrt(2) Re and sqrt(2) Im of the strict upper triangle, row by row.
RealVector hermitian_to_real(const ComplexMatrix& h);
ComplexMatrix real_to_hermitian(const RealVector& v, Eigen::Index dim);

/// Orthonormal basis (columns) of the real span of the given Hermitian
/// matrices, rank decided with relative singular value threshold 1e-10.
RealMatrix real_span_basis(const std::vector<ComplexMatrix>& generators, Eigen::Index dim);

NoiseSpan span_from_generators(std::vector<HermitianMatrix> generators, Eigen::Index dim);

/// Span of the model's noise operators. Works on any model; the span does
/// not depend on canonicalization.
NoiseSpan build_span(const MarkovModel& model);

SpanReport check_membership(const ComplexMatrix& h, const NoiseSpan& span,
                            double tol = kSpanMembershipTol);

/// Per-sector check: for sector k with range V_k the generators are
/// V_k^dag {P_k, (P_k L_j P_k)^H, i(P_k L_j P_k)^AH, (P_k L_j^dag P_l L_i P_k)^H, ...} V_k
/// and the tested operator is V_k^dag H V_k. Reports are in sector order.
std::vector<SpanReport> sector_check(const MarkovModel& model, const SectorDecomposition& sectors,
                                     double tol = kSpanMembershipTol);

/// Span of a single sector, expressed on the sector's own coordinates.
NoiseSpan sector_span(const MarkovModel& model, const SectorDecomposition& sectors,
                      std::size_t sector);

bool all_in_span(const std::vector<SpanReport>& reports);

}  // namespace qfib
