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

#include "qfib/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace qfib {

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  if (!is_square(m)) {
    std::ostringstream msg;
    msg << "Hermitian operator must be square, got " << m.rows() << "x" << m.cols();
    throw DimensionError(msg.str());
  }
  m_ = 0.5 * (m + m.adjoint());
  correction_ = 0.5 * (m - m.adjoint()).norm();
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index dim) {
  return HermitianMatrix(ComplexMatrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
  return HermitianMatrix(ComplexMatrix::Identity(dim, dim));
}

bool is_square(const ComplexMatrix& a) { return a.rows() == a.cols(); }

bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    }
  }
  return true;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (!is_square(a)) return false;
  return (a - a.adjoint()).norm() <= tol * std::max(1.0, a.norm());
}

std::pair<HermitianMatrix, HermitianMatrix> herm_anti_split(const ComplexMatrix& a) {
  if (!is_square(a)) throw DimensionError("herm_anti_split: matrix must be square");
  const ComplexMatrix herm = 0.5 * (a + a.adjoint());
  const ComplexMatrix anti = 0.5 * (a - a.adjoint());
  return {HermitianMatrix(herm), HermitianMatrix(Complex(0.0, 1.0) * anti)};
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

Complex hilbert_schmidt_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("hilbert_schmidt_inner: shape mismatch");
  }
  return (a.adjoint() * b).trace();
}

HermitianEigen hermitian_eigen(const ComplexMatrix& a) {
  if (!is_square(a)) throw DimensionError("hermitian_eigen: matrix must be square");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (a + a.adjoint()));
  if (es.info() != Eigen::Success) throw DomainError("hermitian_eigen: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

std::pair<HermitianMatrix, HermitianMatrix> positive_negative_split(const ComplexMatrix& a) {
  if (!is_hermitian(a, 1e-10)) throw DomainError("positive_negative_split: input is not Hermitian");
  const auto eig = hermitian_eigen(a);
  const Eigen::Index d = a.rows();
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  ComplexMatrix q = ComplexMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double lam = eig.values(k);
    const ComplexVector v = eig.vectors.col(k);
    if (lam > 0.0) {
      p += lam * v * v.adjoint();
    } else if (lam < 0.0) {
      q -= lam * v * v.adjoint();
    }
  }
  return {HermitianMatrix(p), HermitianMatrix(q)};
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b + b * a;
}

ComplexMatrix projector_range(const ComplexMatrix& p) {
  const auto eig = hermitian_eigen(p);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) > 0.5) keep.push_back(k);
  }
  ComplexMatrix v(p.rows(), static_cast<Eigen::Index>(keep.size()));
  // Largest eigenvalue first keeps the column order stable for rank-1 inputs.
  std::reverse(keep.begin(), keep.end());
  for (std::size_t c = 0; c < keep.size(); ++c) v.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(keep[c]);
  return v;
}

namespace pauli {
ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }
ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}
ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

FockBasis::FockBasis(int num_modes, int max_total_particles)
    : num_modes_(num_modes), cutoff_(max_total_particles) {
  if (num_modes < 1) throw DomainError("FockBasis: need at least one mode");
  if (max_total_particles < 0) throw DomainError("FockBasis: negative particle cutoff");
  std::vector<int> current(static_cast<std::size_t>(num_modes), 0);
  // Depth-first over modes with increasing occupation yields lexicographic order.
  std::function<void(int, int)> fill = [&](int mode, int remaining) {
    if (mode == num_modes_) {
      states_.push_back(current);
      return;
    }
    for (int n = 0; n <= remaining; ++n) {
      current[static_cast<std::size_t>(mode)] = n;
      fill(mode + 1, remaining - n);
    }
    current[static_cast<std::size_t>(mode)] = 0;
  };
  fill(0, cutoff_);
}

int FockBasis::total(std::size_t index) const {
  int t = 0;
  for (int n : states_[index]) t += n;
  return t;
}

long FockBasis::index_of(const std::vector<int>& occupation) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), occupation);
  if (it == states_.end() || *it != occupation) return -1;
  return static_cast<long>(it - states_.begin());
}

ComplexMatrix truncated_annihilator(int mode_index, int num_modes, int max_total_particles) {
  if (num_modes < 1 || mode_index < 1 || mode_index > num_modes) {
    std::ostringstream msg;
    msg << "truncated_annihilator: mode index " << mode_index << " outside 1.." << num_modes;
    throw DomainError(msg.str());
  }
  if (max_total_particles < 1) throw DomainError("truncated_annihilator: cutoff must be >= 1");
  const FockBasis basis(num_modes, max_total_particles);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  const auto mode = static_cast<std::size_t>(mode_index - 1);
  for (std::size_t col = 0; col < basis.size(); ++col) {
    auto occ = basis.occupation(col);
    const int n = occ[mode];
    if (n == 0) continue;
    occ[mode] = n - 1;
    const long row = basis.index_of(occ);
    a(row, static_cast<Eigen::Index>(col)) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

ComplexMatrix truncated_number(int mode_index, int num_modes, int max_total_particles) {
  const ComplexMatrix a = truncated_annihilator(mode_index, num_modes, max_total_particles);
  return a.adjoint() * a;
}

ComplexMatrix fixed_total_number_projector(int num_modes, int total, int cutoff) {
  if (total > cutoff) throw DomainError("fixed_total_number_projector: N exceeds the cutoff");
  if (total < 0) throw DomainError("fixed_total_number_projector: negative particle number");
  const FockBasis basis(num_modes, cutoff);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (basis.total(k) == total) p(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
  }
  return p;
}

}  // namespace qfib
