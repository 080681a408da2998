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

#include "qfib/span_condition.hpp"

#include <algorithm>
#include <cmath>

namespace qfib {

namespace {

const double kSqrt2 = std::sqrt(2.0);

// Hermitian and i * anti-Hermitian parts of an arbitrary square matrix.
void push_split(const ComplexMatrix& a, std::vector<HermitianMatrix>& out) {
  auto [herm, anti] = herm_anti_split(a);
  out.push_back(std::move(herm));
  out.push_back(std::move(anti));
}

}  // namespace

RealVector hermitian_to_real(const ComplexMatrix& h) {
  const Eigen::Index d = h.rows();
  RealVector v(d * d);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) v(k++) = h(i, i).real();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      v(k++) = kSqrt2 * h(i, j).real();
      v(k++) = kSqrt2 * h(i, j).imag();
    }
  }
  return v;
}

ComplexMatrix real_to_hermitian(const RealVector& v, Eigen::Index dim) {
  if (v.size() != dim * dim) throw DimensionError("real_to_hermitian: length is not dim^2");
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < dim; ++i) h(i, i) = v(k++);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = i + 1; j < dim; ++j) {
      const Complex z(v(k) / kSqrt2, v(k + 1) / kSqrt2);
      k += 2;
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return h;
}

RealMatrix real_span_basis(const std::vector<ComplexMatrix>& generators, Eigen::Index dim) {
  const Eigen::Index n = dim * dim;
  if (generators.empty()) return RealMatrix(n, 0);
  RealMatrix g(n, static_cast<Eigen::Index>(generators.size()));
  for (std::size_t c = 0; c < generators.size(); ++c) {
    g.col(static_cast<Eigen::Index>(c)) = hermitian_to_real(generators[c]);
  }
  Eigen::JacobiSVD<RealMatrix> svd(g, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return RealMatrix(n, 0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > kSpanRankThreshold * s(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

ComplexMatrix NoiseSpan::project(const ComplexMatrix& h) const {
  if (h.rows() != dim || h.cols() != dim) throw DimensionError("span projection: dim mismatch");
  const RealVector v = hermitian_to_real(0.5 * (h + h.adjoint()));
  RealVector p = RealVector::Zero(v.size());
  for (const auto& b : orthonormal_basis) {
    const RealVector bv = hermitian_to_real(b.matrix());
    p += bv.dot(v) * bv;
  }
  return real_to_hermitian(p, dim);
}

NoiseSpan span_from_generators(std::vector<HermitianMatrix> generators, Eigen::Index dim) {
  NoiseSpan span;
  span.dim = dim;
  std::vector<ComplexMatrix> raw;
  raw.reserve(generators.size());
  for (const auto& g : generators) raw.push_back(g.matrix());
  const RealMatrix basis = real_span_basis(raw, dim);
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    span.orthonormal_basis.emplace_back(real_to_hermitian(basis.col(c), dim));
  }
  span.generators = std::move(generators);
  return span;
}

NoiseSpan build_span(const MarkovModel& model) {
  model.validate();
  const Eigen::Index d = model.dim;
  std::vector<HermitianMatrix> gens;
  gens.push_back(HermitianMatrix::identity(d));
  for (const auto& l : model.noise_ops) push_split(l, gens);
  for (const auto& lj : model.noise_ops) {
    for (const auto& lk : model.noise_ops) push_split(lj.adjoint() * lk, gens);
  }
  return span_from_generators(std::move(gens), d);
}

SpanReport check_membership(const ComplexMatrix& h, const NoiseSpan& span, double tol) {
  if (h.rows() != span.dim || h.cols() != span.dim) {
    throw DimensionError("check_membership: operator and span dimensions differ");
  }
  const ComplexMatrix herm = 0.5 * (h + h.adjoint());
  const ComplexMatrix par = span.project(herm);
  SpanReport r;
  r.h_parallel = HermitianMatrix(par);
  r.h_perp = HermitianMatrix(herm - par);
  r.residual = r.h_perp.matrix().norm() / std::max(1.0, herm.norm());
  r.tolerance_used = tol;
  r.in_span = r.residual <= tol;
  r.marginal = r.residual <= 10.0 * tol && r.residual >= 0.1 * tol;
  return r;
}

NoiseSpan sector_span(const MarkovModel& model, const SectorDecomposition& sectors,
                      std::size_t sector) {
  if (sectors.dim() != model.dim) throw DimensionError("sector projectors do not match the model");
  if (sector >= sectors.size()) throw DimensionError("sector index out of range");
  std::vector<ComplexMatrix> v;
  for (const auto& p : sectors.projectors) v.push_back(projector_range(p.matrix()));
  const ComplexMatrix& vk = v[sector];
  const Eigen::Index r = vk.cols();
  std::vector<HermitianMatrix> gens;
  gens.push_back(HermitianMatrix::identity(r));
  for (const auto& l : model.noise_ops) push_split(vk.adjoint() * l * vk, gens);
  for (const auto& vl : v) {
    std::vector<ComplexMatrix> x;
    for (const auto& l : model.noise_ops) x.push_back(vl.adjoint() * l * vk);
    for (const auto& xj : x) {
      for (const auto& xi : x) push_split(xj.adjoint() * xi, gens);
    }
  }
  return span_from_generators(std::move(gens), r);
}

std::vector<SpanReport> sector_check(const MarkovModel& model, const SectorDecomposition& sectors,
                                     double tol) {
  model.validate();
  sectors.validate();
  std::vector<SpanReport> out;
  for (std::size_t k = 0; k < sectors.size(); ++k) {
    const ComplexMatrix vk = projector_range(sectors.projectors[k].matrix());
    const NoiseSpan span = sector_span(model, sectors, k);
    out.push_back(check_membership(vk.adjoint() * model.hamiltonian.matrix() * vk, span, tol));
  }
  return out;
}

bool all_in_span(const std::vector<SpanReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const SpanReport& r) { return r.in_span; });
}

}  // namespace qfib
