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

#include "qfib/model_zoo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qfib {

LossyInterferometer lossy_interferometer_model(const LossyInterferometerParams& p) {
  if (p.N < 1) throw DomainError("lossy interferometer: N must be at least 1");
  const int cutoff = p.cutoff == 0 ? p.N : p.cutoff;
  if (cutoff < p.N) throw DomainError("lossy interferometer: cutoff below N");
  if (p.k != 1 && p.k != 2) throw DomainError("lossy interferometer: k must be 1 or 2");
  for (double g : {p.gamma1, p.gamma2, p.gamma11, p.gamma22, p.gamma12}) {
    if (!(g >= 0.0)) throw DomainError("lossy interferometer: rates must be non-negative");
  }
  const ComplexMatrix a1 = truncated_annihilator(1, 2, cutoff);
  const ComplexMatrix a2 = truncated_annihilator(2, 2, cutoff);
  ComplexMatrix h;
  if (p.k == 1) {
    h = 0.5 * (a1.adjoint() * a1 - a2.adjoint() * a2);
  } else {
    const ComplexMatrix a1sq = a1 * a1;
    const ComplexMatrix a2sq = a2 * a2;
    h = 0.25 * (a1sq.adjoint() * a1sq + a2sq.adjoint() * a2sq -
                2.0 * a1.adjoint() * a2.adjoint() * a1 * a2);
  }
  std::vector<ComplexMatrix> ops;
  auto push = [&](double g, const ComplexMatrix& op) {
    if (g > 0.0) ops.push_back(std::sqrt(g) * op);
  };
  push(p.gamma1, a1);
  push(p.gamma2, a2);
  push(p.gamma11, a1 * a1);
  push(p.gamma22, a2 * a2);
  push(p.gamma12, a1 * a2);
  std::ostringstream label;
  label << "lossy interferometer k=" << p.k << " N=" << p.N;
  LossyInterferometer out;
  out.model = make_model(h, std::move(ops), 0.0, label.str());
  out.number = a1.adjoint() * a1 + a2.adjoint() * a2;
  out.sectors = sectorize(out.model, out.number);
  for (std::size_t s = 0; s < out.sectors.size(); ++s) {
    if (std::abs(out.sectors.charges[s] - p.N) < 0.5) out.physical_sector = s;
  }
  return out;
}

double closed_form_linear_bound(int N, double gamma1, double gamma2) {
  if (N < 1) throw DomainError("closed_form_linear_bound: N must be at least 1");
  if (gamma1 < 0.0 || gamma2 < 0.0) throw DomainError("closed_form_linear_bound: negative rate");
  const double s = std::sqrt(gamma1) + std::sqrt(gamma2);
  if (s == 0.0) {
    throw DomainError("closed_form_linear_bound: no losses, the linear bound does not apply");
  }
  return 4.0 * N / (s * s);
}

NonlinearTerms nonlinear_terms(int N, int n, double gamma11, double gamma22, double gamma12) {
  const double nn = n;
  const double rest = N - n;
  const double inf = std::numeric_limits<double>::infinity();
  auto ratio = [&](double num, double g) { return num == 0.0 ? 0.0 : (g > 0.0 ? num / g : inf); };
  NonlinearTerms t{};
  t.a = ratio(nn * (nn - 1.0), gamma11) + ratio(rest * (rest - 1.0), gamma22);
  t.b = ratio(4.0 * rest * nn, gamma12);
  t.xi = (t.a + t.b) > 0.0 ? (t.a - t.b) / (t.a + t.b) : 0.0;
  return t;
}

double nonlinear_objective(const NonlinearTerms& t, double xi) {
  return 0.25 * ((xi - 1.0) * (xi - 1.0) * t.a + (xi + 1.0) * (xi + 1.0) * t.b);
}

double nonlinear_bound_maximization(int N, double gamma11, double gamma22, double gamma12) {
  if (N < 2) throw DomainError("nonlinear bound: N must be at least 2");
  if (!(gamma12 > 0.0)) throw DomainError("nonlinear bound: gamma12 must be positive");
  const double invn = 1.0 / N;
  auto q = [&](double x) {
    const double b = 4.0 * x * (1.0 - x) / gamma12;
    double a = 0.0;
    const double t1 = (x - invn) * x;
    const double t2 = (1.0 - x) * (1.0 - x - invn);
    if (gamma11 > 0.0) a += t1 / gamma11;
    if (gamma22 > 0.0) a += t2 / gamma22;
    if (b <= 0.0) return 0.0;
    if (gamma11 == 0.0 || gamma22 == 0.0) return b;  // one quadratic cost is free
    if (a <= 0.0) return 0.0;
    return 1.0 / (1.0 / b + 1.0 / a);
  };
  constexpr int kGrid = 4000;
  int best_i = 0;
  double best = q(0.0);
  for (int i = 1; i <= kGrid; ++i) {
    const double v = q(static_cast<double>(i) / kGrid);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  double lo = std::max(0.0, (best_i - 1.0) / kGrid);
  double hi = std::min(1.0, (best_i + 1.0) / kGrid);
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = q(x1);
  double f2 = q(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = q(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = q(x1);
    }
  }
  best = std::max({best, f1, f2, q(0.5 * (lo + hi)), q(0.0), q(1.0)});
  return static_cast<double>(N) * N * best;
}

double closed_form_nonlinear_bound(int N, double gamma11, double gamma22, double gamma12) {
  if (!(gamma12 > 0.0)) throw DomainError("closed_form_nonlinear_bound: gamma12 must be positive");
  if (gamma11 < 0.0 || gamma22 < 0.0) throw DomainError("closed_form_nonlinear_bound: negative rate");
  if (gamma11 != gamma22) return nonlinear_bound_maximization(N, gamma11, gamma22, gamma12);
  if (N < 2) throw DomainError("closed_form_nonlinear_bound: N must be at least 2");
  const double lam = 2.0 * gamma11 / gamma12;
  const double nd = N;
  double factor = 0.0;
  if (lam >= 1.0 - 2.0 / nd) {
    const double s = 1.0 + std::sqrt(lam);
    factor = 2.0 * (1.0 - 1.0 / nd) / (s * s);
  } else {
    factor = 1.0 / (1.0 + lam * nd / (nd - 2.0));
  }
  return nd * nd / gamma12 * factor;
}

std::pair<double, double> replenished_vs_decaying_bounds(int N, double gamma, double T) {
  if (!(gamma > 0.0) || !(T > 0.0)) throw DomainError("gamma and T must be positive");
  return {N * T / gamma, N / (gamma * gamma) * (-std::expm1(-gamma * T))};
}

MarkovModel qubit_dephasing(double gamma) {
  return make_model(0.5 * pauli::z(), {std::sqrt(gamma) * pauli::z()}, 0.0, "qubit dephasing");
}

MarkovModel qubit_transversal(double gamma) {
  return make_model(0.5 * pauli::z(), {std::sqrt(gamma) * pauli::x()}, 0.0, "qubit transversal");
}

MarkovModel qubit_two_pauli(double gamma) {
  return make_model(0.5 * pauli::z(), {std::sqrt(gamma) * pauli::x(), std::sqrt(gamma) * pauli::y()},
                    0.0, "qubit x and y noise");
}

MarkovModel qubit_amplitude_damping(double gamma) {
  ComplexMatrix lower = ComplexMatrix::Zero(2, 2);
  lower(0, 1) = 1.0;
  return make_model(0.5 * pauli::z(), {std::sqrt(gamma) * lower}, 0.0, "qubit amplitude damping");
}

MarkovModel qubit_noiseless() { return make_model(0.5 * pauli::z(), {}, 0.0, "qubit noiseless"); }

MarkovModel qutrit_uneven_dephasing(double gamma) {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(0, 2) = 1.0;
  h(2, 0) = 1.0;
  ComplexMatrix l = ComplexMatrix::Zero(3, 3);
  l(0, 0) = 1.0;
  l(1, 1) = -1.0;
  return make_model(h, {std::sqrt(gamma) * l}, 0.0, "qutrit uneven dephasing");
}

std::vector<ZooEntry> zoo_models() {
  std::vector<ZooEntry> zoo;
  zoo.push_back({"qubit-dephasing", qubit_dephasing(1.0), std::nullopt, std::nullopt, std::nullopt});
  zoo.push_back({"qubit-transversal", qubit_transversal(1.0), std::nullopt, std::nullopt, std::nullopt});
  zoo.push_back({"qubit-two-pauli", qubit_two_pauli(1.0), std::nullopt, std::nullopt, std::nullopt});
  zoo.push_back({"qubit-amplitude-damping", qubit_amplitude_damping(1.0), std::nullopt, std::nullopt, std::nullopt});
  zoo.push_back({"qubit-noiseless", qubit_noiseless(), std::nullopt, std::nullopt, std::nullopt});
  zoo.push_back({"qutrit-uneven-dephasing", qutrit_uneven_dephasing(1.0), std::nullopt, std::nullopt, std::nullopt});
  {
    LossyInterferometerParams p;
    p.N = 2;
    p.gamma1 = 1.0;
    p.gamma2 = 1.0;
    auto li = lossy_interferometer_model(p);
    zoo.push_back({"lossy-linear-n2", li.model, std::nullopt, std::nullopt, std::nullopt});
  }
  {
    LossyInterferometerParams p;
    p.N = 2;
    p.gamma1 = 0.3;
    p.gamma2 = 2.5;
    p.gamma12 = 0.5;
    auto li = lossy_interferometer_model(p);
    zoo.push_back({"lossy-linear-mixed-n2", li.model, std::nullopt, std::nullopt, std::nullopt});
  }
  {
    LossyInterferometerParams p;
    p.N = 4;
    p.gamma1 = 1.0;
    p.gamma2 = 1.0;
    auto li = lossy_interferometer_model(p);
    zoo.push_back({"lossy-linear-n4-sector", li.model, li.number, li.sectors, li.physical_sector});
  }
  {
    LossyInterferometerParams p;
    p.N = 4;
    p.k = 2;
    p.gamma11 = 0.5;
    p.gamma22 = 0.5;
    p.gamma12 = 1.0;
    auto li = lossy_interferometer_model(p);
    zoo.push_back({"lossy-nonlinear-n4-sector", li.model, li.number, li.sectors, li.physical_sector});
  }
  return zoo;
}

}  // namespace qfib
