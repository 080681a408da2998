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
#include <utility>
#include <vector>

#include "qfib/lindblad_model.hpp"

namespace qfib {

/// Two-mode interferometer with one-body losses sqrt(g_i) a_i and two-body
/// losses sqrt(g_ij) a_i a_j. k = 1 gives H = (n_1 - n_2)/2, k = 2 the
/// normal-ordered :(n_1 - n_2)^2:/4.
struct LossyInterferometerParams {
  int N = 1;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma11 = 0.0;
  double gamma22 = 0.0;
  double gamma12 = 0.0;
  int k = 1;
  /// Fock truncation on the total particle number; 0 means "use N".
  int cutoff = 0;
};

struct LossyInterferometer {
  MarkovModel model;
  /// Total number operator a_1^dag a_1 + a_2^dag a_2.
  ComplexMatrix number;
  /// Total-number sectors, descending particle number.
  SectorDecomposition sectors;
  /// Index of the N-particle sector.
  std::size_t physical_sector = 0;
};

LossyInterferometer lossy_interferometer_model(const LossyInterferometerParams& p);

/// QFI-per-time coefficient 4N / (sqrt(g1) + sqrt(g2))^2.
double closed_form_linear_bound(int N, double gamma1, double gamma2);

/// QFI-per-time coefficient for the normal-ordered quadratic Hamiltonian
/// with two-body losses. Closed form when gamma11 == gamma22, otherwise the
/// numerical maximization over x = n / N.
double closed_form_nonlinear_bound(int N, double gamma11, double gamma22, double gamma12);

/// max over x in [0, 1] of N^2 / (1/b(x) + 1/a(x)) with
///   a = (x - 1/N) x / g11 + (1 - x)(1 - x - 1/N) / g22,  b = 4 x (1 - x) / g12,
/// by a grid scan refined with golden-section search to 1e-10 in x.
double nonlinear_bound_maximization(int N, double gamma11, double gamma22, double gamma12);

/// Per-n quantities of the discrete problem: A(n), B(n) and the minimizing
/// xi = (A - B)/(A + B).
struct NonlinearTerms {
  double a;
  double b;
  double xi;
};
NonlinearTerms nonlinear_terms(int N, int n, double gamma11, double gamma22, double gamma12);
/// (1/4)[(xi - 1)^2 A + (xi + 1)^2 B] at fixed n.
double nonlinear_objective(const NonlinearTerms& t, double xi);

/// (N T / gamma, N (1 - exp(-gamma T)) / gamma^2).
std::pair<double, double> replenished_vs_decaying_bounds(int N, double gamma, double T);

// Qubit and qutrit examples.
MarkovModel qubit_dephasing(double gamma);           // H = Z/2, L = sqrt(g) Z
MarkovModel qubit_transversal(double gamma);         // H = Z/2, L = sqrt(g) X
MarkovModel qubit_two_pauli(double gamma);           // H = Z/2, L = sqrt(g) X, sqrt(g) Y
MarkovModel qubit_amplitude_damping(double gamma);   // H = Z/2, L = sqrt(g) |0><1|
MarkovModel qubit_noiseless();                       // H = Z/2
/// H = |0><2| + |2><0|, L = sqrt(g) diag(1, -1, 0). H is outside the span
/// and the maximally entangled code breaks the equal-norm condition.
MarkovModel qutrit_uneven_dephasing(double gamma);

struct ZooEntry {
  std::string name;
  MarkovModel model;
  /// Conserved charge generating `sectors`, when the entry is sector-graded.
  std::optional<ComplexMatrix> charge;
  std::optional<SectorDecomposition> sectors;
  std::optional<std::size_t> physical_sector;
};

/// Every small example model; used by sweeps and the CLI export command.
std::vector<ZooEntry> zoo_models();

}  // namespace qfib
