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

#include "qfib/lindblad_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qfib {

void MarkovModel::validate() const {
  if (dim <= 0) throw DimensionError("model dimension must be positive");
  if (hamiltonian.dim() != dim) {
    std::ostringstream msg;
    msg << "Hamiltonian is " << hamiltonian.dim() << "x" << hamiltonian.dim() << ", model dim is "
        << dim;
    throw DimensionError(msg.str());
  }
  if (!all_finite(hamiltonian.matrix())) throw DomainError("Hamiltonian has non-finite entries");
  for (std::size_t j = 0; j < noise_ops.size(); ++j) {
    const auto& l = noise_ops[j];
    if (l.rows() != dim || l.cols() != dim) {
      std::ostringstream msg;
      msg << "noise operator " << j << " is " << l.rows() << "x" << l.cols() << ", model dim is "
          << dim;
      throw DimensionError(msg.str());
    }
    if (!all_finite(l)) throw DomainError("noise operator has non-finite entries");
  }
}

MarkovModel make_model(const ComplexMatrix& hamiltonian, std::vector<ComplexMatrix> noise_ops,
                       double omega0, std::string label) {
  MarkovModel m;
  m.dim = hamiltonian.rows();
  m.hamiltonian = HermitianMatrix(hamiltonian);
  m.noise_ops = std::move(noise_ops);
  m.omega0 = omega0;
  m.label = std::move(label);
  m.validate();
  return m;
}

SectorDecomposition SectorDecomposition::trivial(Eigen::Index dim) {
  SectorDecomposition s;
  s.projectors.push_back(HermitianMatrix::identity(dim));
  s.charges.push_back(0.0);
  return s;
}

void SectorDecomposition::validate(double tol) const {
  if (projectors.empty()) throw DomainError("sector decomposition is empty");
  const Eigen::Index d = dim();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (std::size_t k = 0; k < projectors.size(); ++k) {
    const auto& pk = projectors[k].matrix();
    if (pk.rows() != d) throw DimensionError("sector projectors have mixed dimensions");
    sum += pk;
    for (std::size_t j = k; j < projectors.size(); ++j) {
      const ComplexMatrix prod = pk * projectors[j].matrix();
      const double res = (j == k) ? (prod - pk).norm() : prod.norm();
      if (res > tol) throw DomainError("sector projectors are not orthogonal idempotents");
    }
  }
  if ((sum - ComplexMatrix::Identity(d, d)).norm() > tol) {
    throw DomainError("sector projectors do not sum to the identity");
  }
}

CanonicalizationReport canonicalize(const MarkovModel& model) {
  model.validate();
  const Eigen::Index d = model.dim;
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  CanonicalizationReport report;
  ComplexMatrix shift = ComplexMatrix::Zero(d, d);

  std::vector<ComplexMatrix> traceless;
  traceless.reserve(model.noise_ops.size());
  for (const auto& l : model.noise_ops) {
    const Complex lam = l.trace() / static_cast<double>(d);
    ComplexMatrix lbar = l - lam * id;
    // D[lam + Lbar] = D[Lbar] - i [ (i/2)(lam^* Lbar - lam Lbar^dag), . ]
    shift += Complex(0.0, 0.5) * (std::conj(lam) * lbar - lam * lbar.adjoint());
    report.removed_trace.push_back(std::abs(lam));
    traceless.push_back(std::move(lbar));
  }

  const auto j_count = static_cast<Eigen::Index>(traceless.size());
  std::vector<ComplexMatrix> out;
  if (j_count > 0) {
    ComplexMatrix gram(j_count, j_count);
    for (Eigen::Index k = 0; k < j_count; ++k) {
      for (Eigen::Index j = 0; j < j_count; ++j) {
        gram(k, j) = hilbert_schmidt_inner(traceless[static_cast<std::size_t>(k)],
                                           traceless[static_cast<std::size_t>(j)]);
      }
    }
    const double gmax = gram.diagonal().real().maxCoeff();
    double offdiag = 0.0;
    for (Eigen::Index k = 0; k < j_count; ++k) {
      for (Eigen::Index j = 0; j < j_count; ++j) {
        if (k != j) offdiag = std::max(offdiag, std::abs(gram(k, j)));
      }
    }
    const double null_cut = 1e-12 * gmax;
    if (gmax <= 0.0) {
      report.dropped_null_ops = traceless.size();
    } else if (offdiag <= 1e-13 * gmax) {
      // Already orthogonal: keep the operators and their order untouched.
      for (auto& l : traceless) {
        if (l.squaredNorm() > null_cut) {
          out.push_back(std::move(l));
        } else {
          ++report.dropped_null_ops;
        }
      }
    } else {
      report.mixing_applied = true;
      const auto eig = hermitian_eigen(gram);
      // Descending Gram eigenvalue order.
      for (Eigen::Index m = j_count - 1; m >= 0; --m) {
        if (eig.values(m) <= null_cut) {
          ++report.dropped_null_ops;
          continue;
        }
        ComplexMatrix lm = ComplexMatrix::Zero(d, d);
        for (Eigen::Index j = 0; j < j_count; ++j) {
          lm += eig.vectors(j, m) * traceless[static_cast<std::size_t>(j)];
        }
        out.push_back(std::move(lm));
      }
    }
  }

  report.model = model;
  report.model.noise_ops = std::move(out);
  report.induced_hamiltonian_shift = HermitianMatrix(shift);
  return report;
}

bool is_canonical(const MarkovModel& model, double tol) {
  const double sqrt_d = std::sqrt(static_cast<double>(model.dim));
  for (std::size_t j = 0; j < model.noise_ops.size(); ++j) {
    const auto& lj = model.noise_ops[j];
    if (std::abs(lj.trace()) > tol * sqrt_d * std::max(lj.norm(), 1e-300)) return false;
    for (std::size_t k = 0; k < j; ++k) {
      const auto& lk = model.noise_ops[k];
      if (std::abs(hilbert_schmidt_inner(lk, lj)) > tol * lk.norm() * lj.norm()) return false;
    }
  }
  return true;
}

MarkovModel restrict_model(const MarkovModel& model, const ComplexMatrix& projector) {
  model.validate();
  if (projector.rows() != model.dim || projector.cols() != model.dim) {
    throw DimensionError("restrict: projector dimension does not match the model");
  }
  if (!is_hermitian(projector, 1e-10)) throw DomainError("restrict: projector is not Hermitian");
  if ((projector * projector - projector).norm() > 1e-10) {
    throw DomainError("restrict: operator is not idempotent");
  }
  const ComplexMatrix v = projector_range(projector);
  if (v.cols() == 0) throw DomainError("restrict: projector has rank zero");
  MarkovModel out;
  out.dim = v.cols();
  out.hamiltonian = HermitianMatrix(v.adjoint() * model.hamiltonian.matrix() * v);
  for (const auto& l : model.noise_ops) out.noise_ops.push_back(v.adjoint() * l * v);
  out.omega0 = model.omega0;
  out.label = model.label.empty() ? std::string("restricted") : model.label + " (restricted)";
  return out;
}

SectorDecomposition sectorize(const MarkovModel& model, const ComplexMatrix& charge) {
  if (charge.rows() != model.dim || charge.cols() != model.dim) {
    throw DimensionError("sectorize: charge dimension does not match the model");
  }
  if (!is_hermitian(charge, 1e-10)) throw DomainError("sectorize: charge is not Hermitian");
  const auto eig = hermitian_eigen(charge);
  const double scale = std::max(spectral_norm(charge), 1.0);
  const double tol = 1e-8 * scale;
  SectorDecomposition out;
  const Eigen::Index d = model.dim;
  // Walk eigenvalues from the top so sectors come out in descending order.
  Eigen::Index k = d - 1;
  while (k >= 0) {
    const double top = eig.values(k);
    ComplexMatrix p = ComplexMatrix::Zero(d, d);
    double sum = 0.0;
    int count = 0;
    while (k >= 0 && top - eig.values(k) <= tol) {
      const ComplexVector v = eig.vectors.col(k);
      p += v * v.adjoint();
      sum += eig.values(k);
      ++count;
      --k;
    }
    out.projectors.emplace_back(p);
    out.charges.push_back(sum / count);
  }
  return out;
}

ComplexMatrix dissipator_apply(const MarkovModel& model, const ComplexMatrix& rho) {
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& l : model.noise_ops) {
    const ComplexMatrix ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

ComplexMatrix liouvillian_apply(const MarkovModel& model, const ComplexMatrix& rho, double omega) {
  if (rho.rows() != model.dim || rho.cols() != model.dim) {
    throw DimensionError("liouvillian_apply: state dimension does not match the model");
  }
  const ComplexMatrix& h = model.hamiltonian.matrix();
  ComplexMatrix out = dissipator_apply(model, rho);
  if (omega != 0.0) out += Complex(0.0, -omega) * (h * rho - rho * h);
  return out;
}

MarkovModel with_ancilla(const MarkovModel& model, Eigen::Index ancilla_dim) {
  const ComplexMatrix ida = ComplexMatrix::Identity(ancilla_dim, ancilla_dim);
  MarkovModel out;
  out.dim = model.dim * ancilla_dim;
  out.hamiltonian = HermitianMatrix(kron(model.hamiltonian.matrix(), ida));
  for (const auto& l : model.noise_ops) out.noise_ops.push_back(kron(l, ida));
  out.omega0 = model.omega0;
  out.label = model.label;
  return out;
}

}  // namespace qfib
