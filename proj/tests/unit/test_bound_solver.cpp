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
#include "qfib/bound_solver.hpp"
#include "qfib/detail/random.hpp"
#include "qfib/model_zoo.hpp"
#include "qfib/qfi_oracle.hpp"

namespace qfib {
namespace {

MarkovModel scaled(const MarkovModel& m, double c) {
  MarkovModel out = m;
  for (auto& l : out.noise_ops) l *= std::sqrt(c);
  return out;
}

// Two generic noise operators on a qutrit span every Hermitian matrix.
MarkovModel generic_qutrit(unsigned seed) {
  std::mt19937_64 rng(seed);
  return make_model(oracle::random_hermitian(3, rng),
                    {oracle::random_matrix(3, rng), 0.5 * oracle::random_matrix(3, rng)});
}

LossyInterferometer linear_lossy(int n, double g1, double g2) {
  LossyInterferometerParams p;
  p.N = n;
  p.gamma1 = g1;
  p.gamma2 = g2;
  return lossy_interferometer_model(p);
}

TEST(Beta1, ZeroCoefficientsGiveHamiltonian) {
  const MarkovModel m = qubit_two_pauli(1.0);
  const auto h = HCoefficients::zeros(2);
  EXPECT_LT((beta1(m, h).matrix() - m.hamiltonian.matrix()).norm(), 1e-15);
  EXPECT_LT(alpha1(m, h).matrix().norm(), 1e-15);
}

TEST(Beta1, DephasingHandSolution) {
  const double g = 0.6;
  const MarkovModel m = qubit_dephasing(g);
  auto h = HCoefficients::zeros(1);
  h.hvec(0, 0) = -1.0 / (4.0 * std::sqrt(g));
  h.h00[0] = 0.3;
  EXPECT_LT((beta1(m, h).matrix() - 0.3 * pauli::identity()).norm(), 1e-15);
  h.h00[0] = 0.0;
  EXPECT_LT((alpha1(m, h).matrix() - pauli::identity() / (16.0 * g)).norm(), 1e-15);
}

TEST(Beta1, LossyAssignmentCancelsHamiltonian) {
  const double g1 = 0.7;
  const double g2 = 1.9;
  const auto li = linear_lossy(3, g1, g2);
  auto h = HCoefficients::zeros(2);
  h.hmat[0](0, 0) = -1.0 / (2.0 * g1);
  h.hmat[0](1, 1) = 1.0 / (2.0 * g2);
  EXPECT_LT(beta1(li.model, h).matrix().norm(), 1e-13);
}

TEST(Alpha1, NormIsSquaredLargestSingularValue) {
  std::mt19937_64 rng(41);
  const MarkovModel m = make_model(oracle::random_hermitian(3, rng),
                                   {oracle::random_matrix(3, rng), oracle::random_matrix(3, rng)});
  for (int rep = 0; rep < 10; ++rep) {
    auto h = HCoefficients::zeros(2);
    h.hvec = oracle::random_matrix(2, rng).col(0);
    h.hmat[0] = oracle::random_hermitian(2, rng);
    const ComplexMatrix mm = stacked_m(m, h);
    const double s = oracle::power_iteration_norm(mm);
    EXPECT_NEAR(spectral_norm(alpha1(m, h).matrix()), s * s, 1e-10 * s * s);
    EXPECT_GE(hermitian_eigen(alpha1(m, h).matrix()).values.minCoeff(), -1e-12);
  }
}

TEST(Beta1, ShapeMismatchThrows) {
  EXPECT_THROW(beta1(qubit_dephasing(1.0), HCoefficients::zeros(3)), DimensionError);
}

TEST(SolveBound, DephasingCoefficient) {
  for (double g : {0.5, 1.0, 3.0}) {
    SolveOptions o;
    o.cross_check = true;
    const BoundResult r = solve_bound(qubit_dephasing(g), std::nullopt, std::nullopt, o);
    ASSERT_EQ(r.status, SolveStatus::kOptimal);
    EXPECT_NEAR(r.qfi_coefficient, 1.0 / (4.0 * g), 1e-8 / g);
    EXPECT_EQ(r.qfi_coefficient, 4.0 * r.alpha_norm);
    EXPECT_LT(r.cross_check_relative_gap, 1e-6);
  }
}

TEST(SolveBound, LossyLinearMatchesClosedForm) {
  for (auto [g1, g2] : std::vector<std::pair<double, double>>{{1, 1}, {1, 2}, {0.3, 2.5}}) {
    for (int n : {1, 3, 6}) {
      const auto li = linear_lossy(n, g1, g2);
      const BoundResult r = solve_bound(li.model, li.sectors, li.physical_sector);
      const double ref = closed_form_linear_bound(n, g1, g2);
      EXPECT_NEAR(r.qfi_coefficient, ref, 1e-6 * ref) << n << " " << g1 << " " << g2;
    }
  }
}

TEST(SolveBound, NonlinearSymmetricMatchesClosedForm) {
  LossyInterferometerParams p;
  p.N = 4;
  p.k = 2;
  p.gamma11 = p.gamma22 = 0.5;
  p.gamma12 = 1.0;
  const auto li = lossy_interferometer_model(p);
  const BoundResult r = solve_bound(li.model, li.sectors, li.physical_sector);
  const double ref = closed_form_nonlinear_bound(4, 0.5, 0.5, 1.0);
  EXPECT_NEAR(r.qfi_coefficient, ref, 1e-6 * ref);
}

TEST(SolveBound, NoNoiseCases) {
  const BoundResult r = solve_bound(qubit_noiseless());
  EXPECT_EQ(r.status, SolveStatus::kInfeasible);
  EXPECT_TRUE(std::isinf(r.alpha_norm));
  EXPECT_THROW(bound_qfi(r, 1.0), DomainError);
  const BoundResult flat = solve_bound(make_model(0.7 * pauli::identity(), {}));
  EXPECT_EQ(flat.status, SolveStatus::kOptimal);
  EXPECT_NEAR(flat.alpha_norm, 0.0, 1e-15);
  EXPECT_EQ(bound_qfi(flat, 3.0), 0.0);
}

TEST(SolveBound, TransversalIsInfeasible) {
  EXPECT_EQ(solve_bound(qubit_transversal(1.0)).status, SolveStatus::kInfeasible);
}

TEST(BoundQfi, Examples) {
  EXPECT_NEAR(bound_qfi(solve_bound(qubit_dephasing(1.0)), 1.0), 0.25, 1e-8);
  const auto li = linear_lossy(4, 1.0, 1.0);
  EXPECT_NEAR(bound_qfi(solve_bound(li.model, li.sectors, li.physical_sector), 2.0), 8.0, 1e-6);
}

TEST(SolveBound, FeasibilityAndCrossCheckOnZoo) {
  for (const auto& z : zoo_models()) {
    SolveOptions o;
    o.cross_check = true;
    const BoundResult r = solve_bound(z.model, z.sectors, z.physical_sector, o);
    if (r.status == SolveStatus::kInfeasible) continue;
    ASSERT_EQ(r.status, SolveStatus::kOptimal) << z.name;
    const double hs = std::max(1.0, spectral_norm(z.model.hamiltonian.matrix()));
    EXPECT_LE(r.beta_residual, 1e-8 * hs) << z.name;
    const SectorDecomposition dec = z.sectors ? *z.sectors : SectorDecomposition::trivial(z.model.dim);
    const ComplexMatrix b = beta1(z.model, dec, r.optimizer).matrix();
    if (z.physical_sector) {
      const ComplexMatrix& p = dec.projectors[*z.physical_sector].matrix();
      EXPECT_LE((p * b * p).norm(), 1e-8 * hs) << z.name;
      const ComplexMatrix a = alpha1(z.model, dec, r.optimizer).matrix();
      EXPECT_NEAR(spectral_norm(p * a * p), r.alpha_norm, 1e-8 * std::max(1.0, r.alpha_norm));
    } else {
      EXPECT_LE(b.norm(), 1e-8 * hs) << z.name;
      EXPECT_NEAR(spectral_norm(alpha1(z.model, dec, r.optimizer).matrix()), r.alpha_norm,
                  1e-8 * std::max(1.0, r.alpha_norm));
    }
    EXPECT_LE(r.cross_check_relative_gap, 1e-6) << z.name;
  }
}

TEST(SolveBound, OptimalityBySampling) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<MarkovModel> models{qubit_dephasing(1.0), qubit_two_pauli(0.8),
                                  qubit_amplitude_damping(1.2), generic_qutrit(1)};
  for (const auto& m : models) {
    const BoundResult r = solve_bound(m);
    ASSERT_EQ(r.status, SolveStatus::kOptimal);
    const SectorProblem prob(m, SectorDecomposition::trivial(m.dim), 0);
    const auto n = static_cast<Eigen::Index>(prob.directions().size());
    for (int k = 0; k < 200; ++k) {
      RealVector psi(n);
      for (Eigen::Index i = 0; i < n; ++i) psi(i) = g(rng);
      auto h = HCoefficients::zeros(m.noise_ops.size());
      prob.write_coefficients(psi, h);
      EXPECT_LE(beta1(m, h).matrix().norm(), 1e-8 * std::max(1.0, psi.norm()));
      const double a = spectral_norm(alpha1(m, h).matrix());
      EXPECT_GE(a, r.alpha_norm - 1e-7);
    }
  }
}

TEST(SolveBound, NoiseRescalingCovariance) {
  const auto li = linear_lossy(3, 1.0, 2.0);
  const double base = solve_bound(li.model, li.sectors, li.physical_sector).alpha_norm;
  const double dep = solve_bound(qubit_two_pauli(1.0)).alpha_norm;
  for (double c : {0.5, 2.0, 10.0}) {
    const double r = solve_bound(scaled(li.model, c), li.sectors, li.physical_sector).alpha_norm;
    EXPECT_NEAR(r * c, base, 1e-6 * base);
    const double d = solve_bound(scaled(qubit_two_pauli(1.0), c)).alpha_norm;
    EXPECT_NEAR(d * c, dep, 1e-6 * dep);
  }
}

TEST(SolveBound, UnitaryRemixInvariance) {
  std::mt19937_64 rng(43);
  const MarkovModel m = generic_qutrit(2);
  const double base = solve_bound(m).alpha_norm;
  const auto j = static_cast<Eigen::Index>(m.noise_ops.size());
  for (int rep = 0; rep < 3; ++rep) {
    const ComplexMatrix u = random_unitary(j, rng);
    MarkovModel mr = m;
    for (Eigen::Index a = 0; a < j; ++a) {
      ComplexMatrix l = ComplexMatrix::Zero(m.dim, m.dim);
      for (Eigen::Index b = 0; b < j; ++b) l += u(a, b) * m.noise_ops[static_cast<std::size_t>(b)];
      mr.noise_ops[static_cast<std::size_t>(a)] = l;
    }
    EXPECT_NEAR(solve_bound(mr).alpha_norm, base, 1e-8 * std::max(1.0, base));
  }
}

TEST(SolveBound, BisectionMatchesInteriorPoint) {
  SolveOptions o;
  o.method = SolveMethod::kBisection;
  const auto li = linear_lossy(2, 0.3, 2.5);
  const double a = solve_bound(li.model, li.sectors, li.physical_sector, o).alpha_norm;
  const double b = solve_bound(li.model, li.sectors, li.physical_sector).alpha_norm;
  EXPECT_NEAR(a, b, 1e-6 * b);
}

TEST(SolveBound, IterationLimitIsFlagged) {
  SolveOptions o;
  o.max_iterations = 1;
  // Three noise operators on a qubit leave free directions to optimize over.
  std::mt19937_64 rng(3);
  const MarkovModel m = make_model(oracle::random_hermitian(2, rng),
                                   {oracle::random_matrix(2, rng), oracle::random_matrix(2, rng),
                                    oracle::random_matrix(2, rng)});
  const BoundResult r = solve_bound(m, std::nullopt, std::nullopt, o);
  const double exact = solve_bound(m).alpha_norm;
  EXPECT_EQ(r.status, SolveStatus::kMaxIterations);
  EXPECT_GE(r.alpha_norm, exact - 1e-9);
}

TEST(StateDependent, MaximallyMixedConstantTrajectory) {
  const MarkovModel m = qubit_dephasing(1.0);
  std::vector<TrajectorySample> tr;
  for (int i = 0; i <= 10; ++i) tr.push_back({0.1 * i, 0.5 * ComplexMatrix::Identity(2, 2)});
  const double sdb = state_dependent_bound(m, tr);
  const double full = bound_qfi(solve_bound(m), 1.0);
  EXPECT_LE(sdb, full + 1e-8);
  // Hand minimum of Tr(alpha)/2 is 1/16 here.
  EXPECT_NEAR(sdb, 4.0 * 1.0 / 16.0, 1e-8);
}

TEST(StateDependent, SingleSampleIsZero) {
  EXPECT_EQ(state_dependent_bound(qubit_dephasing(1.0), {{0.0, 0.5 * ComplexMatrix::Identity(2, 2)}}), 0.0);
}

TEST(StateDependent, DecayingTrajectory) {
  const int n = 2;
  const double g = 1.0;
  const double t = 1.0;
  const auto li = linear_lossy(n, g, g);
  FockBasis fb(2, n);
  ComplexMatrix rho0 = ComplexMatrix::Zero(li.model.dim, li.model.dim);
  const long idx = fb.index_of({1, 1});
  rho0(idx, idx) = 1.0;
  const auto pr = propagate(li.model, rho0, t, 1e-3, false, true);
  std::vector<TrajectorySample> tr;
  for (std::size_t i = 0; i < pr.times.size(); ++i) tr.push_back({pr.times[i], pr.trajectory[i]});
  const double sdb = state_dependent_bound(li.model, tr, li.sectors);
  const double ref = replenished_vs_decaying_bounds(n, g, t).second;
  EXPECT_NEAR(sdb, ref, 1e-4 * ref);
  EXPECT_LE(sdb, bound_qfi(solve_bound(li.model, li.sectors, li.physical_sector), t) + 1e-8);
}

TEST(StateDependent, BelowFullBoundOnRandomTrajectory) {
  std::mt19937_64 rng(44);
  const MarkovModel m = generic_qutrit(4);
  std::vector<TrajectorySample> tr;
  for (int i = 0; i <= 8; ++i) tr.push_back({0.25 * i, oracle::random_density(3, rng)});
  EXPECT_LE(state_dependent_bound(m, tr), bound_qfi(solve_bound(m), 2.0) + 1e-8);
}

TEST(StateDependent, Errors) {
  const MarkovModel m = qubit_dephasing(1.0);
  const ComplexMatrix mix = 0.5 * ComplexMatrix::Identity(2, 2);
  EXPECT_THROW(state_dependent_bound(m, {{0.0, mix}, {0.0, mix}}), DomainError);
  ComplexMatrix bad = mix;
  bad(0, 0) = 1.2;
  bad(1, 1) = -0.2;
  EXPECT_THROW(state_dependent_bound(m, {{0.0, mix}, {1.0, bad}}), DomainError);
}

}  // namespace
}  // namespace qfib
