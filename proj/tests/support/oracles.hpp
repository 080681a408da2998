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

// Independent reference computations for the tests. Nothing here calls into
// the library's numerical paths; only plain Eigen is used.

#pragma once

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <random>
#include <vector>

#include "qfib/lindblad_model.hpp"
#include "qfib/operator_core.hpp"

namespace qfib::oracle {

inline ComplexMatrix random_hermitian(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  return 0.5 * (a + a.adjoint());
}

inline ComplexMatrix random_matrix(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  return a;
}

inline ComplexMatrix random_density(Eigen::Index d, std::mt19937_64& rng) {
  const ComplexMatrix a = random_matrix(d, rng);
  ComplexMatrix r = a * a.adjoint();
  return r / r.trace().real();
}

// Largest singular value by power iteration on A^dag A.
inline double power_iteration_norm(const ComplexMatrix& a, int iterations = 5000) {
  ComplexVector v = ComplexVector::Ones(a.cols());
  v /= v.norm();
  double est = 0.0;
  for (int k = 0; k < iterations; ++k) {
    ComplexVector w = a.adjoint() * (a * v);
    const double n = w.norm();
    if (n == 0.0) return 0.0;
    est = n;
    v = w / n;
  }
  return std::sqrt(est);
}

// 4 (<dpsi|dpsi> - |<psi|dpsi>|^2) for a normalized |psi>.
inline double pure_state_qfi(const ComplexVector& psi, const ComplexVector& dpsi) {
  return 4.0 * (dpsi.squaredNorm() - std::norm(psi.dot(dpsi)));
}

// Column-stacking superoperator: vec(A X B) = (B^T (x) A) vec(X).
inline ComplexMatrix superop_left_right(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index d = a.rows();
  const ComplexMatrix bt = b.transpose();
  ComplexMatrix out(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) out.block(i * d, j * d, d, d) = bt(i, j) * a;
  }
  return out;
}

inline ComplexMatrix liouvillian_superop(const MarkovModel& m, double omega) {
  const Eigen::Index d = m.dim;
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix& h = m.hamiltonian.matrix();
  const Complex mi(0.0, -1.0);
  ComplexMatrix s = mi * omega * (superop_left_right(h, id) - superop_left_right(id, h));
  for (const auto& l : m.noise_ops) {
    const ComplexMatrix ldl = l.adjoint() * l;
    s += superop_left_right(l, l.adjoint()) - 0.5 * superop_left_right(ldl, id) -
         0.5 * superop_left_right(id, ldl);
  }
  return s;
}

inline ComplexVector vec(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

inline ComplexMatrix unvec(const ComplexVector& v, Eigen::Index d) {
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

struct ExactEvolution {
  ComplexMatrix rho;
  ComplexMatrix drho;
};

// rho(T) and d rho / d omega at omega0 from one exponential of the block
// generator [[S, 0], [dS, S]].
inline ExactEvolution exact_evolution(const MarkovModel& m, const ComplexMatrix& rho0, double T) {
  const Eigen::Index d = m.dim;
  const Eigen::Index n = d * d;
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix& h = m.hamiltonian.matrix();
  ComplexMatrix big = ComplexMatrix::Zero(2 * n, 2 * n);
  const ComplexMatrix s = liouvillian_superop(m, m.omega0);
  big.topLeftCorner(n, n) = s;
  big.bottomRightCorner(n, n) = s;
  big.bottomLeftCorner(n, n) =
      Complex(0.0, -1.0) * (superop_left_right(h, id) - superop_left_right(id, h));
  const ComplexMatrix e = (big * T).exp();
  ComplexVector x0 = ComplexVector::Zero(2 * n);
  x0.head(n) = vec(rho0);
  const ComplexVector x = e * x0;
  return {unvec(x.head(n), d), unvec(x.tail(n), d)};
}

// Rank of a family of Hermitian matrices as real vectors, using plain
// entrywise (Re, Im) stacking.
inline long real_rank(const std::vector<ComplexMatrix>& ms, double threshold = 1e-9) {
  if (ms.empty()) return 0;
  const Eigen::Index d = ms.front().rows();
  RealMatrix a(2 * d * d, static_cast<Eigen::Index>(ms.size()));
  for (std::size_t c = 0; c < ms.size(); ++c) {
    for (Eigen::Index k = 0; k < d * d; ++k) {
      a(k, static_cast<Eigen::Index>(c)) = ms[c](k % d, k / d).real();
      a(d * d + k, static_cast<Eigen::Index>(c)) = ms[c](k % d, k / d).imag();
    }
  }
  Eigen::JacobiSVD<RealMatrix> svd(a);
  const auto& sv = svd.singularValues();
  long r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold * sv(0)) ++r;
  }
  return r;
}

// Raw span generators {1, L^H, i L^AH, (L_j^dag L_k)^H, i (L_j^dag L_k)^AH}.
inline std::vector<ComplexMatrix> raw_generators(const MarkovModel& m) {
  std::vector<ComplexMatrix> g;
  const Eigen::Index d = m.dim;
  g.push_back(ComplexMatrix::Identity(d, d));
  auto split = [&](const ComplexMatrix& a) {
    g.push_back(0.5 * (a + a.adjoint()));
    g.push_back(Complex(0.0, 0.5) * (a - a.adjoint()));
  };
  for (const auto& l : m.noise_ops) split(l);
  for (const auto& a : m.noise_ops) {
    for (const auto& b : m.noise_ops) split(a.adjoint() * b);
  }
  return g;
}

// H in span iff adding it does not raise the real rank.
inline bool brute_in_span(const MarkovModel& m) {
  auto g = raw_generators(m);
  const long r0 = real_rank(g);
  g.push_back(m.hamiltonian.matrix());
  return real_rank(g) == r0;
}

inline double slope_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0;
  double my = 0.0;
  const auto n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    den += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return num / den;
}

}  // namespace qfib::oracle
