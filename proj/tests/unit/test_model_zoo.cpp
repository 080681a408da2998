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

#include <cmath>
#include <set>

#include "qfib/model_zoo.hpp"
#include "qfib/span_condition.hpp"

namespace qfib {
namespace {

TEST(LossyModel, LinearCase) {
  LossyInterferometerParams p;
  p.N = 3;
  p.gamma1 = p.gamma2 = 0.4;
  const auto li = lossy_interferometer_model(p);
  EXPECT_EQ(li.model.dim, 10);
  EXPECT_EQ(li.model.noise_ops.size(), 2u);
  EXPECT_NEAR(li.sectors.charges[li.physical_sector], 3.0, 1e-12);
  EXPECT_NEAR(li.sectors.projectors[li.physical_sector].matrix().trace().real(), 4.0, 1e-12);
}

TEST(LossyModel, NonlinearMatrixElements) {
  LossyInterferometerParams p;
  p.N = 4;
  p.k = 2;
  p.gamma12 = 1.0;
  const auto li = lossy_interferometer_model(p);
  const FockBasis fb(2, 4);
  const ComplexMatrix& h = li.model.hamiltonian.matrix();
  const long i11 = fb.index_of({1, 1});
  EXPECT_NEAR(h(i11, i11).real(), -0.5, 1e-14);
  for (int n = 0; n <= 4; ++n) {
    const long i = fb.index_of({n, 0});
    EXPECT_NEAR(h(i, i).real(), n * (n - 1) / 4.0, 1e-14);
  }
  // Diagonal in the Fock basis.
  EXPECT_LT((h - ComplexMatrix(h.diagonal().asDiagonal())).norm(), 1e-14);
  EXPECT_EQ(li.model.noise_ops.size(), 1u);
}

TEST(LossyModel, CutoffBelowN) {
  LossyInterferometerParams p;
  p.N = 4;
  p.cutoff = 3;
  EXPECT_THROW(lossy_interferometer_model(p), DomainError);
}

TEST(LinearClosedForm, Examples) {
  EXPECT_NEAR(closed_form_linear_bound(4, 1, 1), 4.0, 1e-15);
  EXPECT_NEAR(closed_form_linear_bound(5, 1, 0), 20.0, 1e-15);
  EXPECT_NEAR(closed_form_linear_bound(5, 1, 1e-16), 20.0, 1e-6);
  EXPECT_NEAR(closed_form_linear_bound(1, 2.5, 2.5), 1.0 / 2.5, 1e-15);
  EXPECT_THROW(closed_form_linear_bound(3, 0, 0), DomainError);
}

// Transcription of the finite-N symmetric formula, kept separate from the
// library so the two can disagree.
double symmetric_reference(int n, double g11, double g12) {
  const double lam = 2 * g11 / g12;
  const double nd = n;
  if (lam >= 1 - 2 / nd) return nd * nd / g12 * 2 * (1 - 1 / nd) / std::pow(1 + std::sqrt(lam), 2);
  return nd * nd / g12 / (1 + lam * nd / (nd - 2));
}

TEST(NonlinearClosedForm, SymmetricFormula) {
  for (int n : {4, 8, 12, 20}) {
    for (double lam : {0.3, 0.5, 1.0, 4.0}) {
      const double g12 = 1.3;
      const double g11 = lam * g12 / 2;
      EXPECT_NEAR(closed_form_nonlinear_bound(n, g11, g11, g12), symmetric_reference(n, g11, g12),
                  1e-12 * symmetric_reference(n, g11, g12));
    }
  }
}

TEST(NonlinearClosedForm, LargeNLimits) {
  const int n = 100000;
  const double g12 = 2.0;
  // lambda = 1: N^2 / (2 gamma12)
  EXPECT_NEAR(closed_form_nonlinear_bound(n, 1.0, 1.0, g12) / (double(n) * n / (2 * g12)), 1.0, 1e-4);
  for (double lam : {1.0, 4.0, 9.0}) {
    const double v = closed_form_nonlinear_bound(n, lam * g12 / 2, lam * g12 / 2, g12);
    EXPECT_NEAR(v * g12 / (double(n) * n), 2 / std::pow(1 + std::sqrt(lam), 2), 1e-4);
  }
}

TEST(NonlinearClosedForm, SymmetricMatchesMaximization) {
  for (double lam : {0.5, 1.0, 4.0}) {
    const double g12 = 1.0;
    const double g = lam * g12 / 2;
    const double a = closed_form_nonlinear_bound(20, g, g, g12);
    const double b = nonlinear_bound_maximization(20, g, g, g12);
    EXPECT_NEAR(a, b, 1e-8 * a) << lam;
  }
}

TEST(NonlinearClosedForm, Errors) {
  EXPECT_THROW(closed_form_nonlinear_bound(1, 0.2, 0.7, 1.0), DomainError);
  EXPECT_THROW(closed_form_nonlinear_bound(4, 0.2, 0.2, 0.0), DomainError);
}

TEST(NonlinearTerms, XiIsTheMinimizer) {
  for (int n = 1; n < 8; ++n) {
    const NonlinearTerms t = nonlinear_terms(8, n, 0.3, 0.9, 1.1);
    const double at_xi = nonlinear_objective(t, t.xi);
    double best = at_xi;
    double best_x = t.xi;
    for (int i = -200000; i <= 200000; ++i) {
      const double x = 2.0 * i / 200000.0;
      const double v = nonlinear_objective(t, x);
      if (v < best) {
        best = v;
        best_x = x;
      }
    }
    EXPECT_NEAR(best_x, t.xi, 1e-4);
    EXPECT_NEAR(best, at_xi, 1e-8 * std::max(1.0, at_xi));
    EXPECT_NEAR(at_xi, t.a * t.b / (t.a + t.b), 1e-12 * at_xi);
  }
}

TEST(Replenishment, Examples) {
  auto [r, d] = replenished_vs_decaying_bounds(10, 1.0, 1e-4);
  EXPECT_NEAR(d / r, 1.0, 1e-4);
  std::tie(r, d) = replenished_vs_decaying_bounds(10, 1.0, 60.0);
  EXPECT_NEAR(d, 10.0, 1e-12);
  for (double t : {0.1, 1.0, 5.0, 50.0}) {
    std::tie(r, d) = replenished_vs_decaying_bounds(7, 0.3, t);
    EXPECT_LE(d, r);
    EXPECT_NEAR(r, 7 * t / 0.3, 1e-12 * r);
  }
}

TEST(QubitModels, Classification) {
  auto in = [](const MarkovModel& m) {
    return check_membership(m.hamiltonian.matrix(), build_span(m)).in_span;
  };
  EXPECT_TRUE(in(qubit_dephasing(1)));
  EXPECT_FALSE(in(qubit_transversal(1)));
  EXPECT_TRUE(in(qubit_two_pauli(1)));
  EXPECT_TRUE(in(qubit_amplitude_damping(1)));
  EXPECT_FALSE(in(qubit_noiseless()));
  EXPECT_FALSE(in(qutrit_uneven_dephasing(1)));
}

TEST(Zoo, NamesAreUniqueAndModelsValid) {
  const auto zoo = zoo_models();
  std::set<std::string> names;
  for (const auto& z : zoo) {
    EXPECT_TRUE(names.insert(z.name).second) << z.name;
    z.model.validate();
    if (z.sectors) z.sectors->validate();
    EXPECT_EQ(z.sectors.has_value(), z.charge.has_value());
  }
  EXPECT_GE(zoo.size(), 8u);
}

}  // namespace
}  // namespace qfib
