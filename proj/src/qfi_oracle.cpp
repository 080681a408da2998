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

#include "qfib/qfi_oracle.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace qfib {

namespace {

struct Pair {
  ComplexMatrix rho;
  ComplexMatrix drho;
};

}  // namespace

void check_density_matrix(const ComplexMatrix& rho, double trace_tol) {
  if (!is_square(rho)) throw DimensionError("density matrix must be square");
  if (!is_hermitian(rho, 1e-10)) throw DomainError("density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > trace_tol) {
    throw DomainError("density matrix does not have unit trace");
  }
  if (hermitian_eigen(rho).values.minCoeff() < -1e-9) {
    throw DomainError("density matrix is not positive semidefinite");
  }
}

PropagationResult propagate(const MarkovModel& model, const ComplexMatrix& rho0, double T, double dt,
                            bool with_ancilla, bool keep_trajectory) {
  return propagate_extended(model, rho0, with_ancilla ? model.dim : 1, T, dt, keep_trajectory);
}

PropagationResult propagate_extended(const MarkovModel& model, const ComplexMatrix& rho0,
                                     Eigen::Index ancilla_dim, double T, double dt,
                                     bool keep_trajectory) {
  model.validate();
  if (!(T > 0.0) || !(dt > 0.0)) throw DomainError("propagate: T and dt must be positive");
  if (dt >= T) throw DomainError("propagate: dt must be smaller than T");
  if (ancilla_dim < 1) throw DimensionError("propagate: ancilla dimension must be positive");
  const Eigen::Index d = model.dim;
  const Eigen::Index r = ancilla_dim;
  const Eigen::Index n = d * r;
  if (rho0.rows() != n || rho0.cols() != n) {
    throw DimensionError("propagate: initial state has the wrong dimension");
  }
  check_density_matrix(rho0);

  // Ancilla-major storage: index a*r + i (system a, ancilla i) goes to i*d + a,
  // so system operators act on contiguous d-row and d-column strips.
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(n);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index i = 0; i < r; ++i) perm.indices()(a * r + i) = static_cast<int>(i * d + a);
  }
  auto to_internal = [&](const ComplexMatrix& x) -> ComplexMatrix { return perm * x * perm.transpose(); };
  auto to_external = [&](const ComplexMatrix& x) -> ComplexMatrix { return perm.transpose() * x * perm; };
  auto left = [&](const ComplexMatrix& a, const ComplexMatrix& x) {
    ComplexMatrix y(n, n);
    for (Eigen::Index i = 0; i < n; i += d) y.middleRows(i, d).noalias() = a * x.middleRows(i, d);
    return y;
  };
  auto right = [&](const ComplexMatrix& x, const ComplexMatrix& b) {
    ComplexMatrix y(n, n);
    for (Eigen::Index j = 0; j < n; j += d) y.middleCols(j, d).noalias() = x.middleCols(j, d) * b;
    return y;
  };

  const auto steps = std::max<long>(1, std::lround(T / dt));
  const double h = T / static_cast<double>(steps);
  const ComplexMatrix& ham = model.hamiltonian.matrix();
  const Complex mi(0.0, -1.0);
  // L(x) = K x + x K^dag + sum_j L_j x L_j^dag with K = -i w0 H - 1/2 sum L^dag L.
  ComplexMatrix k = (mi * model.omega0) * ham;
  std::vector<ComplexMatrix> ldag;
  for (const auto& l : model.noise_ops) {
    k -= 0.5 * (l.adjoint() * l);
    ldag.push_back(l.adjoint());
  }
  const ComplexMatrix kdag = k.adjoint();
  auto gen = [&](const ComplexMatrix& x) {
    ComplexMatrix y = left(k, x) + right(x, kdag);
    for (std::size_t j = 0; j < ldag.size(); ++j) y += right(left(model.noise_ops[j], x), ldag[j]);
    return y;
  };
  auto rhs = [&](const Pair& x) {
    Pair dx;
    dx.rho = gen(x.rho);
    dx.drho = gen(x.drho) + mi * (left(ham, x.rho) - right(x.rho, ham));
    return dx;
  };

  PropagationResult out;
  Pair x{to_internal(rho0), ComplexMatrix::Zero(n, n)};
  out.times.push_back(0.0);
  if (keep_trajectory) out.trajectory.push_back(rho0);
  for (long s = 0; s < steps; ++s) {
    const Pair k1 = rhs(x);
    const Pair k2 = rhs({x.rho + 0.5 * h * k1.rho, x.drho + 0.5 * h * k1.drho});
    const Pair k3 = rhs({x.rho + 0.5 * h * k2.rho, x.drho + 0.5 * h * k2.drho});
    const Pair k4 = rhs({x.rho + h * k3.rho, x.drho + h * k3.drho});
    x.rho += (h / 6.0) * (k1.rho + 2.0 * k2.rho + 2.0 * k3.rho + k4.rho);
    x.drho += (h / 6.0) * (k1.drho + 2.0 * k2.drho + 2.0 * k3.drho + k4.drho);
    out.times.push_back(h * static_cast<double>(s + 1));
    if (keep_trajectory) out.trajectory.push_back(to_external(x.rho));
  }
  out.trace_error = std::abs(x.rho.trace() - Complex(1.0));
  out.rho = to_external(x.rho);
  out.drho = to_external(x.drho);
  return out;
}

double qfi_of_state(const ComplexMatrix& rho, const ComplexMatrix& drho, double eps_cut) {
  if (!is_square(rho) || rho.rows() != drho.rows() || rho.cols() != drho.cols()) {
    throw DimensionError("qfi_of_state: shape mismatch");
  }
  const auto eig = hermitian_eigen(rho);
  const ComplexMatrix d = eig.vectors.adjoint() * (0.5 * (drho + drho.adjoint())) * eig.vectors;
  double f = 0.0;
  for (Eigen::Index a = 0; a < d.rows(); ++a) {
    for (Eigen::Index b = 0; b < d.cols(); ++b) {
      const double s = eig.values(a) + eig.values(b);
      if (s > eps_cut) f += 2.0 * std::norm(d(a, b)) / s;
    }
  }
  return f;
}

ComplexVector maximally_entangled_vector(Eigen::Index dim) {
  ComplexVector v = ComplexVector::Zero(dim * dim);
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) v(i * dim + i) = amp;
  return v;
}

ComplexMatrix maximally_entangled_state(Eigen::Index dim) {
  const ComplexVector v = maximally_entangled_vector(dim);
  return v * v.adjoint();
}

BoundCheckReport verify_bound(const MarkovModel& model, const std::optional<ComplexMatrix>& rho0,
                              const std::vector<double>& T_list, const BoundResult& bound,
                              double dt) {
  if (bound.status != SolveStatus::kOptimal) {
    throw DomainError("verify_bound: bound status is " + to_string(bound.status));
  }
  bool ancilla = true;
  ComplexMatrix input;
  if (rho0) {
    if (rho0->rows() == model.dim) {
      ancilla = false;
    } else if (rho0->rows() != model.dim * model.dim) {
      throw DimensionError("verify_bound: input state must live on the system or system+ancilla");
    }
    input = *rho0;
  } else {
    input = maximally_entangled_state(model.dim);
  }
  BoundCheckReport report;
  for (double T : T_list) {
    BoundCheckRow row;
    row.T = T;
    const auto fine = propagate(model, input, T, dt, ancilla);
    row.qfi = qfi_of_state(fine.rho, fine.drho);
    if (2.0 * dt < T) {
      const auto coarse = propagate(model, input, T, 2.0 * dt, ancilla);
      row.error_estimate = std::abs(row.qfi - qfi_of_state(coarse.rho, coarse.drho)) / 15.0;
    }
    row.bound = bound_qfi(bound, T);
    row.margin = row.bound - row.qfi;
    row.slack = 1e-6 + row.error_estimate;
    row.passed = row.margin >= -row.slack;
    report.all_passed = report.all_passed && row.passed;
    report.rows.push_back(row);
  }
  return report;
}

std::string bound_check_csv(const BoundCheckReport& report) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "T,qfi,bound,margin\n";
  for (const auto& r : report.rows) {
    os << r.T << ',' << r.qfi << ',' << r.bound << ',' << r.margin << '\n';
  }
  return os.str();
}

}  // namespace qfib
