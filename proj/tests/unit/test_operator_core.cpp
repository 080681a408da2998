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

#include <random>

#include "oracles.hpp"
#include "qfib/detail/random.hpp"
#include "qfib/operator_core.hpp"

namespace qfib {
namespace {

TEST(HermAntiSplit, HermitianInputHasZeroAntiPart) {
  auto [h, a] = herm_anti_split(pauli::z());
  EXPECT_LT((h.matrix() - pauli::z()).norm(), 1e-15);
  EXPECT_LT(a.matrix().norm(), 1e-15);
}

TEST(HermAntiSplit, LoweringOperatorGivesXAndY) {
  const ComplexMatrix a = pauli::x() - Complex(0, 1) * pauli::y();
  auto [h, ah] = herm_anti_split(a);
  EXPECT_LT((h.matrix() - pauli::x()).norm(), 1e-15);
  EXPECT_LT((ah.matrix() - pauli::y()).norm(), 1e-15);
}

TEST(HermAntiSplit, RandomReconstruction) {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const ComplexMatrix a = oracle::random_matrix(4, rng);
    auto [h, ah] = herm_anti_split(a);
    EXPECT_TRUE(is_hermitian(h.matrix()));
    EXPECT_TRUE(is_hermitian(ah.matrix()));
    const ComplexMatrix back = h.matrix() - Complex(0, 1) * ah.matrix();
    EXPECT_LT((back - a).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(HermAntiSplit, RejectsNonSquare) {
  EXPECT_THROW(herm_anti_split(ComplexMatrix::Zero(2, 3)), DimensionError);
}

TEST(SpectralNorm, DiagonalAndZero) {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 1;
  d(1, 1) = -3;
  d(2, 2) = 2;
  EXPECT_NEAR(spectral_norm(d), 3.0, 1e-14);
  EXPECT_EQ(spectral_norm(ComplexMatrix::Zero(4, 4)), 0.0);
}

TEST(SpectralNorm, MatchesPowerIteration) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 5; ++rep) {
    const ComplexMatrix a = oracle::random_matrix(6, rng);
    const double ref = oracle::power_iteration_norm(a);
    EXPECT_NEAR(spectral_norm(a), ref, 1e-10 * ref);
  }
}

TEST(SpectralNorm, Submultiplicative) {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 20; ++rep) {
    const ComplexMatrix a = oracle::random_matrix(5, rng);
    const ComplexMatrix b = oracle::random_matrix(5, rng);
    const double rhs = spectral_norm(a) * spectral_norm(b);
    EXPECT_LE(spectral_norm(a * b), rhs * (1 + 1e-10));
  }
}

TEST(HilbertSchmidt, PauliRelations) {
  EXPECT_NEAR(std::abs(hilbert_schmidt_inner(pauli::x(), pauli::x()) - Complex(2, 0)), 0, 1e-15);
  EXPECT_NEAR(std::abs(hilbert_schmidt_inner(pauli::x(), pauli::y())), 0, 1e-15);
  EXPECT_NEAR(std::abs(hilbert_schmidt_inner(pauli::identity(), pauli::z())), 0, 1e-15);
  EXPECT_THROW(hilbert_schmidt_inner(pauli::x(), ComplexMatrix::Zero(3, 3)), DimensionError);
}

TEST(PositiveNegativeSplit, PauliZ) {
  auto [p, q] = positive_negative_split(pauli::z());
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1;
  ComplexMatrix q0 = ComplexMatrix::Zero(2, 2);
  q0(1, 1) = 1;
  EXPECT_LT((p.matrix() - p0).norm(), 1e-14);
  EXPECT_LT((q.matrix() - q0).norm(), 1e-14);
  auto [pm, qm] = positive_negative_split(-pauli::z());
  EXPECT_LT((pm.matrix() - q0).norm(), 1e-14);
  EXPECT_LT((qm.matrix() - p0).norm(), 1e-14);
}

TEST(PositiveNegativeSplit, RandomTraceless) {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    ComplexMatrix a = oracle::random_hermitian(3, rng);
    a -= (a.trace() / 3.0) * ComplexMatrix::Identity(3, 3);
    auto [p, q] = positive_negative_split(a);
    EXPECT_LT((p.matrix() - q.matrix() - a).norm(), 1e-12);
    EXPECT_NEAR(p.matrix().trace().real(), q.matrix().trace().real(), 1e-12);
    EXPECT_GE(hermitian_eigen(p.matrix()).values.minCoeff(), -1e-12);
    EXPECT_GE(hermitian_eigen(q.matrix()).values.minCoeff(), -1e-12);
    EXPECT_LE(std::abs((p.matrix() * q.matrix()).trace()), 1e-12);
  }
}

TEST(PositiveNegativeSplit, RejectsNonHermitian) {
  EXPECT_THROW(positive_negative_split(pauli::x() + Complex(0, 1) * pauli::identity()), DomainError);
}

TEST(Fock, SingleModeLadder) {
  const ComplexMatrix a = truncated_annihilator(1, 1, 2);
  ASSERT_EQ(a.rows(), 3);
  ComplexMatrix ref = ComplexMatrix::Zero(3, 3);
  ref(0, 1) = 1.0;
  ref(1, 2) = std::sqrt(2.0);
  EXPECT_LT((a - ref).norm(), 1e-15);
}

TEST(Fock, ModesCommuteBelowCutoff) {
  const int cutoff = 4;
  const FockBasis basis(2, cutoff);
  const ComplexMatrix a1 = truncated_annihilator(1, 2, cutoff);
  const ComplexMatrix a2 = truncated_annihilator(2, 2, cutoff);
  std::vector<std::pair<ComplexMatrix, ComplexMatrix>> pairs{{a1, a1}, {a1, a2}, {a2, a1}, {a2, a2}};
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& [ai, aj] = pairs[p];
    ComplexMatrix c = ai * aj.adjoint() - aj.adjoint() * ai;
    const bool same = (p == 0 || p == 3);
    if (same) c -= ComplexMatrix::Identity(c.rows(), c.cols());
    double worst = 0.0;
    for (std::size_t col = 0; col < basis.size(); ++col) {
      if (basis.total(col) >= cutoff) continue;
      worst = std::max(worst, c.col(static_cast<Eigen::Index>(col)).norm());
    }
    EXPECT_LT(worst, 1e-12);
  }
}

TEST(Fock, TotalNumberIsDiagonal) {
  const int cutoff = 3;
  const FockBasis basis(2, cutoff);
  const ComplexMatrix a1 = truncated_annihilator(1, 2, cutoff);
  const ComplexMatrix a2 = truncated_annihilator(2, 2, cutoff);
  const ComplexMatrix n = a1.adjoint() * a1 + a2.adjoint() * a2;
  ASSERT_EQ(static_cast<std::size_t>(n.rows()), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      const double want = (i == j) ? basis.occupation(i)[0] + basis.occupation(i)[1] : 0.0;
      EXPECT_NEAR(std::abs(n(ii, jj) - Complex(want, 0)), 0.0, 1e-14);
    }
  }
}

TEST(Fock, LexicographicOrder) {
  const FockBasis basis(2, 2);
  const std::vector<std::vector<int>> want{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}};
  ASSERT_EQ(basis.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(basis.occupation(i), want[i]);
  EXPECT_EQ(basis.index_of({3, 0}), -1);
}

TEST(Fock, AnnihilatorIndexOutOfRange) {
  EXPECT_THROW(truncated_annihilator(0, 2, 2), DomainError);
  EXPECT_THROW(truncated_annihilator(3, 2, 2), DomainError);
}

TEST(Fock, FixedNumberProjector) {
  const ComplexMatrix p1 = fixed_total_number_projector(2, 1, 1);
  EXPECT_NEAR(p1.trace().real(), 2.0, 1e-14);
  const ComplexMatrix p2 = fixed_total_number_projector(2, 2, 2);
  EXPECT_NEAR(p2.trace().real(), 3.0, 1e-14);
  for (auto [n, c] : std::vector<std::pair<int, int>>{{0, 3}, {2, 5}, {4, 4}, {3, 6}}) {
    const ComplexMatrix p = fixed_total_number_projector(2, n, c);
    EXPECT_LT((p * p - p).norm(), 1e-14);
    EXPECT_NEAR(p.trace().real(), n + 1.0, 1e-14);
  }
  EXPECT_THROW(fixed_total_number_projector(2, 3, 2), DomainError);
}

TEST(HermitianMatrixType, SymmetrizesAndRecordsCorrection) {
  ComplexMatrix a = pauli::x();
  a(0, 1) += 1e-6;
  const HermitianMatrix h(a);
  EXPECT_TRUE(is_hermitian(h.matrix()));
  EXPECT_GT(h.symmetrization_correction(), 1e-9);
  EXPECT_THROW(HermitianMatrix(ComplexMatrix::Zero(2, 3)), DimensionError);
}

}  // namespace
}  // namespace qfib
