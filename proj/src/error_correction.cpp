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

#include "qfib/error_correction.hpp"

#include <algorithm>
#include <cmath>

#include "qfib/qfi_oracle.hpp"
#include "qfib/span_condition.hpp"

namespace qfib {

namespace {

MarkovModel extended(const MarkovModel& model, const CodePair& code) {
  code.validate(model.dim);
  return with_ancilla(model, code.ancilla_dim);
}

// Columns with orthonormal span of `vectors`, in order, skipping dependent ones.
ComplexMatrix gram_schmidt(const std::vector<ComplexVector>& vectors, double tol) {
  std::vector<ComplexVector> basis;
  for (const auto& v : vectors) {
    ComplexVector w = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) w -= b.dot(w) * b;
    }
    const double n = w.norm();
    if (n > tol * std::max(1.0, v.norm())) basis.push_back(w / n);
  }
  ComplexMatrix out(vectors.empty() ? 0 : vectors.front().size(),
                    static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = basis[i];
  return out;
}

// Closest matrix with orthonormal columns.
ComplexMatrix polar_isometry(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

void CodePair::validate(Eigen::Index probe_dim) const {
  if (ancilla_dim < 1) throw DomainError("code: ancilla dimension must be positive");
  if (phi.size() != probe_dim * ancilla_dim || xi.size() != probe_dim * ancilla_dim) {
    throw DimensionError("code: states do not live on probe (x) ancilla");
  }
  if (std::abs(phi.norm() - 1.0) > 1e-12 || std::abs(xi.norm() - 1.0) > 1e-12) {
    throw DomainError("code: states must be normalized");
  }
  if (std::abs(phi.dot(xi)) > 1e-10) throw DomainError("code: states must be orthogonal");
}

ComplexMatrix RecoveryMap::apply(const ComplexMatrix& rho) const {
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& r : kraus_ops) out += r * rho * r.adjoint();
  return out;
}

double RecoveryMap::trace_residual() const {
  if (kraus_ops.empty()) return 0.0;
  const Eigen::Index d = kraus_ops.front().cols();
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (const auto& r : kraus_ops) s += r.adjoint() * r;
  return (s - ComplexMatrix::Identity(d, d)).norm();
}

EcReport check_conditions(const MarkovModel& model, const CodePair& code, double tol_a,
                          double tol_bc) {
  model.validate();
  const MarkovModel m = extended(model, code);
  const ComplexVector& phi = code.phi;
  const ComplexVector& xi = code.xi;
  EcReport r;
  r.tol_a = tol_a;
  r.tol_bc = tol_bc;
  r.cond_a_value = std::abs(phi.dot(m.hamiltonian.matrix() * xi));
  std::vector<ComplexVector> lphi;
  std::vector<ComplexVector> lxi;
  for (const auto& l : m.noise_ops) {
    lphi.push_back(l * phi);
    lxi.push_back(l * xi);
  }
  for (std::size_t j = 0; j < lphi.size(); ++j) {
    r.cond_b_residual = std::max(r.cond_b_residual, std::abs(phi.dot(lxi[j])));
    r.aux_residual = std::max(r.aux_residual, std::abs(xi.dot(lphi[j])));
    r.aux_residual = std::max(r.aux_residual, std::abs(phi.dot(lphi[j]) - xi.dot(lxi[j])));
    for (std::size_t k = 0; k < lphi.size(); ++k) {
      // <phi|L_k^dag L_j|xi> = <L_k phi|L_j xi>
      r.cond_b_residual = std::max(r.cond_b_residual, std::abs(lphi[k].dot(lxi[j])));
      r.cond_c_residual =
          std::max(r.cond_c_residual, std::abs(lphi[k].dot(lphi[j]) - lxi[k].dot(lxi[j])));
    }
  }
  r.verdict = r.cond_a_value > tol_a && r.cond_b_residual <= tol_bc && r.cond_c_residual <= tol_bc;
  return r;
}

HermitianMatrix perpendicular_hamiltonian(const MarkovModel& model) {
  const NoiseSpan span = build_span(model);
  return check_membership(model.hamiltonian.matrix(), span).h_perp;
}

namespace {

void require_perp(const MarkovModel& model, const HermitianMatrix& hp) {
  if (hp.matrix().norm() <= 1e-9 * std::max(1.0, model.hamiltonian.matrix().norm())) {
    throw DomainError("H lies in the noise span (H_perp = 0): no error-correction code exists");
  }
}

}  // namespace

CodePair maximally_entangled_code(const MarkovModel& model) {
  model.validate();
  const HermitianMatrix hp = perpendicular_hamiltonian(model);
  require_perp(model, hp);
  const Eigen::Index d = model.dim;
  CodePair code;
  code.ancilla_dim = d;
  code.phi = maximally_entangled_vector(d);
  const ComplexVector x = kron(hp.matrix(), ComplexMatrix::Identity(d, d)) * code.phi;
  code.xi = x / x.norm();
  // Tr H_perp = 0 already makes xi orthogonal to phi; clean the rounding.
  code.xi -= code.phi.dot(code.xi) * code.phi;
  code.xi.normalize();
  return code;
}

CodePair universal_code(const MarkovModel& model) {
  model.validate();
  const HermitianMatrix hp = perpendicular_hamiltonian(model);
  require_perp(model, hp);
  const Eigen::Index d = model.dim;
  const auto eig = hermitian_eigen(hp.matrix());
  const double cut = 1e-12 * std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> pos;
  std::vector<Eigen::Index> neg;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (eig.values(i) > cut) pos.push_back(i);
    if (eig.values(i) < -cut) neg.push_back(i);
  }
  double tp = 0.0;
  double tq = 0.0;
  for (auto i : pos) tp += eig.values(i);
  for (auto i : neg) tq -= eig.values(i);
  const auto ra = static_cast<Eigen::Index>(pos.size() + neg.size());
  CodePair code;
  code.ancilla_dim = ra;
  ComplexVector p = ComplexVector::Zero(d * ra);
  ComplexVector q = ComplexVector::Zero(d * ra);
  ComplexVector e = ComplexVector::Zero(ra);
  Eigen::Index slot = 0;
  for (auto i : pos) {
    e.setZero();
    e(slot++) = 1.0;
    p += std::sqrt(eig.values(i) / tp) * kron(eig.vectors.col(i), e);
  }
  for (auto i : neg) {
    e.setZero();
    e(slot++) = 1.0;
    q += std::sqrt(-eig.values(i) / tq) * kron(eig.vectors.col(i), e);
  }
  code.phi = (p + q) / std::sqrt(2.0);
  code.xi = (p - q) / std::sqrt(2.0);
  code.phi.normalize();
  code.xi.normalize();
  return code;
}

RecoveryMap build_recovery(const MarkovModel& model, const CodePair& code, double tol) {
  const EcReport rep = check_conditions(model, code, tol, tol);
  if (!rep.verdict) throw DomainError("build_recovery: code conditions are violated");
  if (rep.aux_residual > tol) {
    throw DomainError("build_recovery: <xi|L|phi> or <L> differs between code states");
  }
  const MarkovModel m = with_ancilla(model, code.ancilla_dim);
  const Eigen::Index n = m.dim;
  std::vector<ComplexVector> fam_phi{code.phi};
  std::vector<ComplexVector> fam_xi{code.xi};
  for (const auto& l : m.noise_ops) {
    fam_phi.push_back(l * code.phi);
    fam_xi.push_back(l * code.xi);
  }
  const ComplexMatrix e = gram_schmidt(fam_phi, 1e-10);
  ComplexMatrix phi_mat(n, static_cast<Eigen::Index>(fam_phi.size()));
  ComplexMatrix xi_mat(n, static_cast<Eigen::Index>(fam_xi.size()));
  for (std::size_t i = 0; i < fam_phi.size(); ++i) {
    phi_mat.col(static_cast<Eigen::Index>(i)) = fam_phi[i];
    xi_mat.col(static_cast<Eigen::Index>(i)) = fam_xi[i];
  }
  // phi_mat = E A, and equal Gram matrices make F = Xi A^+ an isometry.
  const ComplexMatrix a = e.adjoint() * phi_mat;
  const ComplexMatrix a_pinv = a.completeOrthogonalDecomposition().pseudoInverse();
  const ComplexMatrix f = polar_isometry(xi_mat * a_pinv);
  const Eigen::Index k = e.cols();
  ComplexMatrix w(n, 2 * k);
  w << e, f;
  if ((w.adjoint() * w - ComplexMatrix::Identity(2 * k, 2 * k)).norm() > 1e-6) {
    throw DomainError("build_recovery: error spaces of the code states overlap");
  }
  w = polar_isometry(w);

  RecoveryMap rec;
  for (Eigen::Index l = 0; l < k; ++l) {
    rec.kraus_ops.push_back(code.phi * w.col(l).adjoint() + code.xi * w.col(k + l).adjoint());
  }
  // Dump the complement onto |phi>.
  Eigen::JacobiSVD<ComplexMatrix> svd(w, Eigen::ComputeFullU);
  const ComplexMatrix comp = svd.matrixU().rightCols(n - 2 * k);
  for (Eigen::Index t = 0; t < comp.cols(); ++t) {
    rec.kraus_ops.push_back(code.phi * comp.col(t).adjoint());
  }
  return rec;
}

EcSimulation simulate_ec(const MarkovModel& model, const CodePair& code, const RecoveryMap& recovery,
                         double T, double dt) {
  const MarkovModel m = extended(model, code);
  if (recovery.kraus_ops.empty() || recovery.kraus_ops.front().cols() != m.dim) {
    throw DimensionError("simulate_ec: recovery does not act on probe (x) ancilla");
  }
  if (recovery.trace_residual() > 1e-10) {
    throw DomainError("simulate_ec: recovery is not trace preserving");
  }
  if (T < 0.0 || !(dt > 0.0)) throw DomainError("simulate_ec: need T >= 0 and dt > 0");
  const ComplexMatrix& h = m.hamiltonian.matrix();
  const ComplexMatrix rho0 = code.phi * code.phi.adjoint();

  EcSimulation out;
  const ComplexMatrix x = recovery.apply(h * rho0 - rho0 * h);
  const ComplexMatrix tmpl = code.xi * code.phi.adjoint() - code.phi * code.xi.adjoint();
  // tmpl has squared norm 2.
  out.c = 0.5 * hilbert_schmidt_inner(tmpl, x).real();
  out.c_remainder = (x - out.c * tmpl).norm();
  if (T == 0.0) return out;

  const auto steps = std::max<long>(1, std::lround(T / dt));
  const double step = T / static_cast<double>(steps);
  const Complex mi(0.0, -1.0);
  ComplexMatrix rho = rho0;
  ComplexMatrix drho = ComplexMatrix::Zero(m.dim, m.dim);
  for (long s = 0; s < steps; ++s) {
    const ComplexMatrix next_d =
        drho + step * dissipator_apply(m, drho) + (mi * step) * (h * rho - rho * h);
    rho = recovery.apply(rho + step * dissipator_apply(m, rho));
    drho = recovery.apply(next_d);
  }
  out.qfi = qfi_of_state(rho, drho);
  return out;
}

}  // namespace qfib
