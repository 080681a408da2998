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

#include "qfib/bound_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qfib/span_condition.hpp"

namespace qfib {

namespace {

constexpr double kActiveThreshold = 1e-12;
constexpr double kNullThreshold = 1e-10;
constexpr double kFeasibleTol = 1e-9;

const Complex kI(0.0, 1.0);

double lambda_max_hermitian(const ComplexMatrix& s) {
  if (s.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(s.rows() - 1);
}

double sigma_max_squared(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return std::max(0.0, lambda_max_hermitian(m.adjoint() * m));
}

// Re Tr(A B) without forming the product.
double re_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.array() * b.transpose().array()).sum().real();
}

ComplexMatrix affine(const ComplexMatrix& m0, const std::vector<ComplexMatrix>& dirs,
                     const RealVector& psi) {
  ComplexMatrix m = m0;
  for (std::size_t i = 0; i < dirs.size(); ++i) m += psi(static_cast<Eigen::Index>(i)) * dirs[i];
  return m;
}

RealVector complex_to_real(const ComplexMatrix& m) {
  RealVector v(2 * m.size());
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      v(k++) = m(i, j).real();
      v(k++) = m(i, j).imag();
    }
  }
  return v;
}

std::vector<ComplexMatrix> sector_ranges(const SectorDecomposition& sectors) {
  std::vector<ComplexMatrix> v;
  v.reserve(sectors.size());
  for (const auto& p : sectors.projectors) v.push_back(projector_range(p.matrix()));
  return v;
}

void check_h_shape(const MarkovModel& model, const SectorDecomposition& sectors,
                   const HCoefficients& h) {
  const auto k = sectors.size();
  const auto j = static_cast<Eigen::Index>(model.noise_ops.size());
  if (h.h00.size() != k || h.hvec.rows() != j || h.hvec.cols() != static_cast<Eigen::Index>(k) ||
      h.hmat.size() != k * k) {
    throw DimensionError("h-coefficients do not match the model's noise operators and sectors");
  }
  for (const auto& b : h.hmat) {
    if (b.rows() != j || b.cols() != j) throw DimensionError("hmat block has the wrong shape");
  }
}

// beta_s and M_s straight from the defining formulas.
std::pair<ComplexMatrix, ComplexMatrix> graded_blocks(const MarkovModel& model,
                                                      const std::vector<ComplexMatrix>& v,
                                                      const HCoefficients& h, std::size_t s) {
  const std::size_t k = v.size();
  const std::size_t jn = model.noise_ops.size();
  const ComplexMatrix& vs = v[s];
  const Eigen::Index r = vs.cols();
  ComplexMatrix beta = vs.adjoint() * model.hamiltonian.matrix() * vs;
  beta += h.h00[s] * ComplexMatrix::Identity(r, r);
  Eigen::Index rows = 0;
  for (std::size_t m = 0; m < k; ++m) rows += static_cast<Eigen::Index>(jn) * v[m].cols();
  ComplexMatrix mstack = ComplexMatrix::Zero(rows, r);
  Eigen::Index offset = 0;
  for (std::size_t m = 0; m < k; ++m) {
    const ComplexMatrix& vm = v[m];
    std::vector<ComplexMatrix> x;
    for (const auto& l : model.noise_ops) x.push_back(vm.adjoint() * l * vs);
    const ComplexMatrix& block = h.hmat[m * k + s];
    for (std::size_t j = 0; j < jn; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      auto row = mstack.block(offset, 0, vm.cols(), r);
      if (m == s) {
        const Complex hj = h.hvec(jj, static_cast<Eigen::Index>(s));
        beta += std::conj(hj) * x[j] + hj * x[j].adjoint();
        row += hj * ComplexMatrix::Identity(r, r);
      }
      for (std::size_t j2 = 0; j2 < jn; ++j2) {
        const Complex c = block(jj, static_cast<Eigen::Index>(j2));
        if (c == Complex(0.0)) continue;
        beta += c * x[j].adjoint() * x[j2];
        row += c * x[j2];
      }
      offset += vm.cols();
    }
  }
  return {beta, mstack};
}

}  // namespace

HCoefficients HCoefficients::zeros(std::size_t num_noise, std::size_t num_sectors) {
  HCoefficients h;
  const auto j = static_cast<Eigen::Index>(num_noise);
  h.h00.assign(num_sectors, 0.0);
  h.hvec = ComplexMatrix::Zero(j, static_cast<Eigen::Index>(num_sectors));
  h.hmat.assign(num_sectors * num_sectors, ComplexMatrix::Zero(j, j));
  return h;
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kMaxIterations:
      return "max_iterations";
  }
  return "unknown";
}

std::string to_string(SolveMethod m) {
  return m == SolveMethod::kInteriorPoint ? "interior_point" : "bisection";
}

HermitianMatrix beta1(const MarkovModel& model, const SectorDecomposition& sectors,
                      const HCoefficients& h) {
  model.validate();
  if (sectors.dim() != model.dim) throw DimensionError("sectors do not match the model");
  check_h_shape(model, sectors, h);
  const auto v = sector_ranges(sectors);
  ComplexMatrix out = ComplexMatrix::Zero(model.dim, model.dim);
  for (std::size_t s = 0; s < v.size(); ++s) {
    out += v[s] * graded_blocks(model, v, h, s).first * v[s].adjoint();
  }
  return HermitianMatrix(out);
}

HermitianMatrix alpha1(const MarkovModel& model, const SectorDecomposition& sectors,
                       const HCoefficients& h) {
  model.validate();
  if (sectors.dim() != model.dim) throw DimensionError("sectors do not match the model");
  check_h_shape(model, sectors, h);
  const auto v = sector_ranges(sectors);
  ComplexMatrix out = ComplexMatrix::Zero(model.dim, model.dim);
  for (std::size_t s = 0; s < v.size(); ++s) {
    const ComplexMatrix m = graded_blocks(model, v, h, s).second;
    out += v[s] * (m.adjoint() * m) * v[s].adjoint();
  }
  return HermitianMatrix(out);
}

HermitianMatrix beta1(const MarkovModel& model, const HCoefficients& h) {
  return beta1(model, SectorDecomposition::trivial(model.dim), h);
}

HermitianMatrix alpha1(const MarkovModel& model, const HCoefficients& h) {
  const ComplexMatrix m = stacked_m(model, h);
  return HermitianMatrix(m.adjoint() * m);
}

ComplexMatrix stacked_m(const MarkovModel& model, const HCoefficients& h) {
  model.validate();
  const auto triv = SectorDecomposition::trivial(model.dim);
  check_h_shape(model, triv, h);
  const std::vector<ComplexMatrix> v{ComplexMatrix::Identity(model.dim, model.dim)};
  return graded_blocks(model, v, h, 0).second;
}

// ---------------------------------------------------------------------------

SectorProblem::SectorProblem(const MarkovModel& model, const SectorDecomposition& sectors,
                             std::size_t sector)
    : sector_(sector), num_sectors_(sectors.size()), num_noise_(model.noise_ops.size()) {
  model.validate();
  if (sectors.dim() != model.dim) throw DimensionError("sectors do not match the model");
  if (sector >= sectors.size()) throw DimensionError("sector index out of range");
  const auto v = sector_ranges(sectors);
  const ComplexMatrix& vs = v[sector];
  rank_ = vs.cols();
  const Eigen::Index r = rank_;
  const ComplexMatrix id = ComplexMatrix::Identity(r, r);
  h_block_ = vs.adjoint() * model.hamiltonian.matrix() * vs;
  h_scale_ = std::max(1.0, h_block_.norm());

  double lscale = 1.0;
  for (const auto& l : model.noise_ops) lscale = std::max(lscale, l.norm());
  const double active_cut = kActiveThreshold * lscale;

  // Active noise indices and the row layout of M per target sector.
  struct Block {
    std::size_t m;
    std::size_t j;
    Eigen::Index offset;
    ComplexMatrix x;
  };
  std::vector<std::vector<Block>> blocks(num_sectors_);
  Eigen::Index rows = 0;
  for (std::size_t m = 0; m < num_sectors_; ++m) {
    for (std::size_t j = 0; j < num_noise_; ++j) {
      ComplexMatrix x = v[m].adjoint() * model.noise_ops[j] * vs;
      if (x.norm() <= active_cut) {
        ++pruned_;
        continue;
      }
      blocks[m].push_back({m, j, rows, std::move(x)});
      rows += v[m].cols();
    }
  }

  auto add = [&](Coordinate c, ComplexMatrix b, ComplexMatrix cm) {
    coords_.push_back(c);
    b_cols_.push_back(std::move(b));
    c_cols_.push_back(std::move(cm));
  };
  auto zero_c = [&]() { return ComplexMatrix::Zero(rows, r).eval(); };

  add({Kind::kH00, sector, 0, 0}, id, zero_c());
  for (const auto& b : blocks[sector]) {
    ComplexMatrix c = zero_c();
    c.block(b.offset, 0, r, r) = id;
    add({Kind::kHvecRe, sector, b.j, 0}, b.x + b.x.adjoint(), c);
    c.block(b.offset, 0, r, r) = kI * id;
    add({Kind::kHvecIm, sector, b.j, 0}, kI * (b.x.adjoint() - b.x), c);
  }
  for (std::size_t m = 0; m < num_sectors_; ++m) {
    const auto& bl = blocks[m];
    const Eigen::Index rm = v[m].cols();
    for (std::size_t a = 0; a < bl.size(); ++a) {
      ComplexMatrix c = zero_c();
      c.block(bl[a].offset, 0, rm, r) = bl[a].x;
      add({Kind::kDiag, m, bl[a].j, bl[a].j}, bl[a].x.adjoint() * bl[a].x, c);
    }
    for (std::size_t a = 0; a < bl.size(); ++a) {
      for (std::size_t b = a + 1; b < bl.size(); ++b) {
        const ComplexMatrix& xa = bl[a].x;
        const ComplexMatrix& xb = bl[b].x;
        ComplexMatrix c = zero_c();
        c.block(bl[a].offset, 0, rm, r) = xb;
        c.block(bl[b].offset, 0, rm, r) = xa;
        add({Kind::kOffRe, m, bl[a].j, bl[b].j}, xa.adjoint() * xb + xb.adjoint() * xa, c);
        c.block(bl[a].offset, 0, rm, r) = kI * xb;
        c.block(bl[b].offset, 0, rm, r) = -kI * xa;
        add({Kind::kOffIm, m, bl[a].j, bl[b].j},
            kI * (xa.adjoint() * xb) - kI * (xb.adjoint() * xa), c);
      }
    }
  }

  // beta_s = 0 as a real linear system.
  const auto nc = static_cast<Eigen::Index>(coords_.size());
  RealMatrix a(r * r, nc);
  for (Eigen::Index c = 0; c < nc; ++c) {
    a.col(c) = hermitian_to_real(b_cols_[static_cast<std::size_t>(c)]);
  }
  const RealVector rhs = -hermitian_to_real(h_block_);
  Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  Eigen::Index rk = 0;
  if (sv.size() > 0 && sv(0) > 0.0) {
    while (rk < sv.size() && sv(rk) > kNullThreshold * sv(0)) ++rk;
  }
  theta_p_ = RealVector::Zero(nc);
  for (Eigen::Index i = 0; i < rk; ++i) {
    theta_p_ += (svd.matrixU().col(i).dot(rhs) / sv(i)) * svd.matrixV().col(i);
  }
  constraint_residual_ = (a * theta_p_ - rhs).norm() / h_scale_;
  const RealMatrix z_full = svd.matrixV().rightCols(nc - rk);

  m0_ = ComplexMatrix::Zero(rows, r);
  for (Eigen::Index c = 0; c < nc; ++c) m0_ += theta_p_(c) * c_cols_[static_cast<std::size_t>(c)];

  // Keep only nullspace directions that actually move M.
  z_ = RealMatrix(nc, 0);
  if (z_full.cols() > 0 && rows > 0) {
    RealMatrix g(2 * rows * r, z_full.cols());
    for (Eigen::Index i = 0; i < z_full.cols(); ++i) {
      ComplexMatrix d = ComplexMatrix::Zero(rows, r);
      for (Eigen::Index c = 0; c < nc; ++c) d += z_full(c, i) * c_cols_[static_cast<std::size_t>(c)];
      g.col(i) = complex_to_real(d);
    }
    Eigen::JacobiSVD<RealMatrix> gsvd(g, Eigen::ComputeThinV);
    const RealVector& gs = gsvd.singularValues();
    Eigen::Index keep = 0;
    if (gs.size() > 0 && gs(0) > 0.0) {
      while (keep < gs.size() && gs(keep) > kNullThreshold * gs(0)) ++keep;
    }
    // Unit-norm directions keep the solvers' coordinates well scaled.
    z_ = z_full * gsvd.matrixV().leftCols(keep);
    for (Eigen::Index i = 0; i < keep; ++i) z_.col(i) /= gs(i);
  }
  for (Eigen::Index i = 0; i < z_.cols(); ++i) {
    ComplexMatrix d = ComplexMatrix::Zero(rows, r);
    for (Eigen::Index c = 0; c < nc; ++c) d += z_(c, i) * c_cols_[static_cast<std::size_t>(c)];
    dirs_.push_back(std::move(d));
  }
}

bool SectorProblem::feasible(double tol) const { return constraint_residual_ <= tol; }

ComplexMatrix SectorProblem::m_of(const RealVector& psi) const { return affine(m0_, dirs_, psi); }

RealVector SectorProblem::theta_of(const RealVector& psi) const {
  if (psi.size() != z_.cols()) throw DimensionError("psi has the wrong length");
  return theta_p_ + z_ * psi;
}

ComplexMatrix SectorProblem::beta_of_theta(const RealVector& theta) const {
  ComplexMatrix b = h_block_;
  for (std::size_t c = 0; c < b_cols_.size(); ++c) {
    b += theta(static_cast<Eigen::Index>(c)) * b_cols_[c];
  }
  return b;
}

void SectorProblem::write_coefficients(const RealVector& psi, HCoefficients& h) const {
  const RealVector theta = theta_of(psi);
  const auto s = static_cast<Eigen::Index>(sector_);
  for (std::size_t c = 0; c < coords_.size(); ++c) {
    const auto& co = coords_[c];
    const double t = theta(static_cast<Eigen::Index>(c));
    const auto j = static_cast<Eigen::Index>(co.j);
    const auto j2 = static_cast<Eigen::Index>(co.j2);
    ComplexMatrix* blk = nullptr;
    if (co.kind == Kind::kDiag || co.kind == Kind::kOffRe || co.kind == Kind::kOffIm) {
      blk = &h.hmat[co.target * num_sectors_ + sector_];
    }
    switch (co.kind) {
      case Kind::kH00:
        h.h00[sector_] = t;
        break;
      case Kind::kHvecRe:
        h.hvec(j, s) += t;
        break;
      case Kind::kHvecIm:
        h.hvec(j, s) += kI * t;
        break;
      case Kind::kDiag:
        (*blk)(j, j) = t;
        break;
      case Kind::kOffRe:
        (*blk)(j, j2) += t;
        (*blk)(j2, j) += t;
        break;
      case Kind::kOffIm:
        (*blk)(j, j2) += kI * t;
        (*blk)(j2, j) -= kI * t;
        break;
    }
  }
}

// ---------------------------------------------------------------------------
// Interior point.

SpectralMinResult minimize_spectral_ipm(const ComplexMatrix& m0,
                                        const std::vector<ComplexMatrix>& dirs, double rel_tol,
                                        int max_iterations) {
  SpectralMinResult res;
  const auto p = static_cast<Eigen::Index>(dirs.size());
  res.psi = RealVector::Zero(p);
  const double lam0 = sigma_max_squared(m0);
  res.value = lam0;
  if (p == 0 || lam0 == 0.0) return res;

  const Eigen::Index r = m0.cols();
  const double nu = static_cast<double>(m0.rows() + r);
  const ComplexMatrix id = ComplexMatrix::Identity(r, r);

  RealVector x(p + 1);
  x(0) = 2.0 * lam0;
  x.tail(p).setZero();
  double s = nu / x(0);

  // Returns false if the slack is not positive definite.
  auto phi = [&](const RealVector& xv, double& val) {
    const ComplexMatrix m = affine(m0, dirs, xv.tail(p));
    const ComplexMatrix slack = xv(0) * id - m.adjoint() * m;
    Eigen::LLT<ComplexMatrix> llt(slack);
    if (llt.info() != Eigen::Success) return false;
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < r; ++i) {
      const double d = llt.matrixL()(i, i).real();
      if (!(d > 0.0)) return false;
      logdet += 2.0 * std::log(d);
    }
    val = s * xv(0) - logdet;
    return true;
  };

  int total = 0;
  bool done = false;
  while (!done && total < max_iterations) {
    for (int inner = 0; inner < 200 && total < max_iterations; ++inner, ++total) {
      const ComplexMatrix m = affine(m0, dirs, x.tail(p));
      const ComplexMatrix slack = x(0) * id - m.adjoint() * m;
      Eigen::LLT<ComplexMatrix> llt(slack);
      const ComplexMatrix sinv = llt.solve(id);
      std::vector<ComplexMatrix> k(static_cast<std::size_t>(p + 1));
      k[0] = sinv;
      for (Eigen::Index i = 0; i < p; ++i) {
        const ComplexMatrix nm = dirs[static_cast<std::size_t>(i)].adjoint() * m;
        k[static_cast<std::size_t>(i + 1)] = -sinv * (nm + nm.adjoint());
      }
      RealVector g(p + 1);
      RealMatrix h(p + 1, p + 1);
      for (Eigen::Index a = 0; a <= p; ++a) {
        g(a) = (a == 0 ? s : 0.0) - k[static_cast<std::size_t>(a)].trace().real();
        for (Eigen::Index b = 0; b <= a; ++b) {
          double v = re_trace_product(k[static_cast<std::size_t>(a)], k[static_cast<std::size_t>(b)]);
          if (a > 0 && b > 0) {
            v += 2.0 * re_trace_product(
                           sinv, dirs[static_cast<std::size_t>(a - 1)].adjoint() *
                                     dirs[static_cast<std::size_t>(b - 1)]);
          }
          h(a, b) = v;
          h(b, a) = v;
        }
      }
      const RealVector dx = -h.ldlt().solve(g);
      const double dec2 = -g.dot(dx);
      if (!std::isfinite(dec2) || dec2 < 1e-14) break;
      double f0 = 0.0;
      phi(x, f0);
      double t = 1.0;
      double f1 = 0.0;
      int ls = 0;
      while (ls < 80) {
        if (phi(x + t * dx, f1) && f1 <= f0 - 0.25 * t * dec2) break;
        t *= 0.5;
        ++ls;
      }
      if (ls == 80) break;
      x += t * dx;
      if (dec2 < 1e-10) break;
    }
    const double current = sigma_max_squared(affine(m0, dirs, x.tail(p)));
    if (nu / s <= rel_tol * std::max(current, 1e-300)) done = true;
    s *= 10.0;
  }
  res.psi = x.tail(p);
  res.value = sigma_max_squared(affine(m0, dirs, res.psi));
  res.iterations = total;
  res.converged = done;
  return res;
}

// ---------------------------------------------------------------------------
// Bisection with a smoothed-spectrum feasibility oracle.

namespace {

class SmoothedOracle {
 public:
  SmoothedOracle(const ComplexMatrix& m0, const std::vector<ComplexMatrix>& dirs)
      : m0_(m0), dirs_(dirs), p_(static_cast<Eigen::Index>(dirs.size())) {
    psi_ = RealVector::Zero(p_);
    best_psi_ = psi_;
    best_ = sigma_max_squared(m0_);
    scale_ = std::max(best_, 1e-300);
    temperature_ = scale_;
    // Precompute N_i^dag N_j.
    nn_.resize(static_cast<std::size_t>(p_ * p_));
    for (Eigen::Index i = 0; i < p_; ++i) {
      for (Eigen::Index j = 0; j < p_; ++j) {
        nn_[static_cast<std::size_t>(i * p_ + j)] =
            dirs_[static_cast<std::size_t>(i)].adjoint() * dirs_[static_cast<std::size_t>(j)];
      }
    }
  }

  // True iff [[sqrt(lam), M^dag], [M, sqrt(lam)]] >= -1e-10 at some psi found.
  bool feasible(double lam) {
    if (certifies(lam)) return true;
    while (!finished_) {
      step();
      if (certifies(lam)) return true;
    }
    return false;
  }

  const RealVector& best_psi() const { return best_psi_; }
  double best() const { return best_; }
  int iterations() const { return iterations_; }

 private:
  bool certifies(double lam) const { return std::sqrt(lam) - std::sqrt(best_) >= -1e-10; }

  double value(const RealVector& psi, double tau, RealVector* g, RealMatrix* h) const {
    const ComplexMatrix m = affine(m0_, dirs_, psi);
    const ComplexMatrix s = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s);
    const RealVector& d = es.eigenvalues();
    const Eigen::Index r = d.size();
    const double dmax = d(r - 1);
    RealVector w(r);
    for (Eigen::Index a = 0; a < r; ++a) w(a) = std::exp((d(a) - dmax) / tau);
    const double z = w.sum();
    w /= z;
    const double f = dmax + tau * std::log(z);
    if (g == nullptr) return f;
    const ComplexMatrix& u = es.eigenvectors();
    std::vector<ComplexMatrix> gh(static_cast<std::size_t>(p_));
    g->resize(p_);
    for (Eigen::Index i = 0; i < p_; ++i) {
      const ComplexMatrix nm = dirs_[static_cast<std::size_t>(i)].adjoint() * m;
      gh[static_cast<std::size_t>(i)] = u.adjoint() * (nm + nm.adjoint()) * u;
      double gi = 0.0;
      for (Eigen::Index a = 0; a < r; ++a) gi += w(a) * gh[static_cast<std::size_t>(i)](a, a).real();
      (*g)(i) = gi;
    }
    RealMatrix gamma(r, r);
    for (Eigen::Index a = 0; a < r; ++a) {
      for (Eigen::Index b = 0; b < r; ++b) {
        const Eigen::Index hi = d(a) >= d(b) ? a : b;
        const double delta = std::abs(d(a) - d(b));
        gamma(a, b) = delta > 0.0 ? w(hi) * (-std::expm1(-delta / tau)) / delta : w(hi) / tau;
      }
    }
    const ComplexMatrix wmat = u * w.cast<Complex>().asDiagonal() * u.adjoint();
    h->resize(p_, p_);
    for (Eigen::Index i = 0; i < p_; ++i) {
      for (Eigen::Index j = 0; j <= i; ++j) {
        const ComplexMatrix& gi = gh[static_cast<std::size_t>(i)];
        const ComplexMatrix& gj = gh[static_cast<std::size_t>(j)];
        double v = (gamma.cast<Complex>().array() * gi.array() * gj.transpose().array()).sum().real();
        v -= (*g)(i) * (*g)(j) / tau;
        v += 2.0 * re_trace_product(wmat, nn_[static_cast<std::size_t>(i * p_ + j)]);
        (*h)(i, j) = v;
        (*h)(j, i) = v;
      }
    }
    return f;
  }

  // One damped Newton step at the current temperature, or a temperature drop.
  void step() {
    ++iterations_;
    RealVector g;
    RealMatrix h;
    const double f0 = value(psi_, temperature_, &g, &h);
    const double reg = 1e-14 * std::max(1.0, h.diagonal().cwiseAbs().maxCoeff());
    const RealVector dx = -(h + reg * RealMatrix::Identity(p_, p_)).ldlt().solve(g);
    const double dec2 = -g.dot(dx);
    const bool last = temperature_ <= kFinalTemperature * scale_;
    const double stop = (last ? 1e-6 : 1e-2) * temperature_;
    if (!std::isfinite(dec2) || dec2 <= stop || inner_ >= 60) {
      inner_ = 0;
      if (last) {
        finished_ = true;
      } else {
        temperature_ *= 0.1;
      }
      return;
    }
    ++inner_;
    double t = 1.0;
    for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
      const RealVector trial = psi_ + t * dx;
      if (value(trial, temperature_, nullptr, nullptr) <= f0 - 0.25 * t * dec2) {
        psi_ = trial;
        break;
      }
    }
    const double lam = sigma_max_squared(affine(m0_, dirs_, psi_));
    if (lam < best_) {
      best_ = lam;
      best_psi_ = psi_;
    }
  }

  static constexpr double kFinalTemperature = 1e-13;

  const ComplexMatrix& m0_;
  const std::vector<ComplexMatrix>& dirs_;
  Eigen::Index p_;
  std::vector<ComplexMatrix> nn_;
  RealVector psi_;
  RealVector best_psi_;
  double best_;
  double scale_;
  double temperature_;
  bool finished_ = false;
  int inner_ = 0;
  int iterations_ = 0;
};

}  // namespace

SpectralMinResult minimize_spectral_bisection(const ComplexMatrix& m0,
                                              const std::vector<ComplexMatrix>& dirs,
                                              double tol, int max_iterations) {
  SpectralMinResult res;
  res.psi = RealVector::Zero(static_cast<Eigen::Index>(dirs.size()));
  double hi = sigma_max_squared(m0);
  res.value = hi;
  if (dirs.empty() || hi == 0.0) return res;
  double lo = 0.0;
  SmoothedOracle oracle(m0, dirs);
  int it = 0;
  while (hi - lo > tol * std::max(1.0, hi)) {
    if (it >= max_iterations) {
      res.converged = false;
      break;
    }
    ++it;
    const double mid = 0.5 * (lo + hi);
    if (oracle.feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  res.psi = oracle.best_psi();
  // The certificate point is at least as good as the bracket's upper end.
  res.value = std::min(hi, sigma_max_squared(affine(m0, dirs, res.psi)));
  res.iterations = it + oracle.iterations();
  return res;
}

// ---------------------------------------------------------------------------

BoundResult solve_bound(const MarkovModel& model, const std::optional<SectorDecomposition>& sectors,
                        std::optional<std::size_t> physical_sector, const SolveOptions& options) {
  model.validate();
  const SectorDecomposition dec = sectors ? *sectors : SectorDecomposition::trivial(model.dim);
  dec.validate();
  if (dec.dim() != model.dim) throw DimensionError("sectors do not match the model");
  if (physical_sector && *physical_sector >= dec.size()) {
    throw DimensionError("physical sector index out of range");
  }

  BoundResult out;
  out.method = options.method;
  out.optimizer = HCoefficients::zeros(model.noise_ops.size(), dec.size());
  out.sector_alpha.assign(dec.size(), std::numeric_limits<double>::quiet_NaN());
  out.cross_check_alpha = std::numeric_limits<double>::quiet_NaN();

  std::vector<std::size_t> todo;
  if (physical_sector) {
    todo.push_back(*physical_sector);
  } else {
    for (std::size_t s = 0; s < dec.size(); ++s) todo.push_back(s);
  }

  double best = 0.0;
  double other_best = 0.0;
  bool any_unconverged = false;
  for (std::size_t s : todo) {
    const SectorProblem prob(model, dec, s);
    out.pruned_blocks += prob.pruned_blocks();
    if (!prob.feasible(kFeasibleTol)) {
      std::ostringstream msg;
      msg << "sector " << s << ": Hamiltonian outside the noise span (residual "
          << prob.constraint_residual() << ")";
      out.diagnostics.push_back(msg.str());
      out.status = SolveStatus::kInfeasible;
      continue;
    }
    auto run = [&](SolveMethod m, double tol) {
      return m == SolveMethod::kInteriorPoint
                 ? minimize_spectral_ipm(prob.m0(), prob.directions(), tol * 1e-3,
                                         options.max_iterations)
                 : minimize_spectral_bisection(prob.m0(), prob.directions(), tol,
                                               options.max_iterations);
    };
    const SpectralMinResult r = run(options.method, options.tol);
    out.iterations += r.iterations;
    any_unconverged = any_unconverged || !r.converged;
    prob.write_coefficients(r.psi, out.optimizer);
    out.sector_alpha[s] = r.value;
    best = std::max(best, r.value);
    const double beta_res = prob.beta_of_theta(prob.theta_of(r.psi)).norm();
    out.beta_residual = std::max(out.beta_residual, beta_res);
    if (options.cross_check) {
      const SolveMethod other = options.method == SolveMethod::kInteriorPoint
                                    ? SolveMethod::kBisection
                                    : SolveMethod::kInteriorPoint;
      const SpectralMinResult r2 = run(other, std::min(options.tol, 1e-10));
      other_best = std::max(other_best, r2.value);
    }
  }
  if (out.pruned_blocks > 0) {
    std::ostringstream msg;
    msg << "pruned " << out.pruned_blocks << " vanishing noise-index blocks";
    out.diagnostics.push_back(msg.str());
  }
  if (out.status == SolveStatus::kInfeasible) {
    out.alpha_norm = std::numeric_limits<double>::infinity();
    out.qfi_coefficient = std::numeric_limits<double>::infinity();
    return out;
  }
  out.alpha_norm = best;
  out.qfi_coefficient = 4.0 * best;
  if (any_unconverged) {
    out.status = SolveStatus::kMaxIterations;
    out.diagnostics.push_back("solver hit the iteration limit; alpha_norm is an upper bound");
  }
  if (options.cross_check) {
    out.cross_checked = true;
    out.cross_check_alpha = other_best;
    const double denom = std::max({best, other_best, 1e-300});
    out.cross_check_relative_gap = (best == other_best) ? 0.0 : std::abs(best - other_best) / denom;
  }
  return out;
}

double bound_qfi(const BoundResult& result, double T) {
  if (result.status != SolveStatus::kOptimal) {
    throw DomainError("bound_qfi: solver status is " + to_string(result.status));
  }
  if (!(T >= 0.0)) throw DomainError("bound_qfi: T must be non-negative");
  return 4.0 * result.alpha_norm * T;
}

double state_dependent_bound(const MarkovModel& model,
                             const std::vector<TrajectorySample>& trajectory,
                             const std::optional<SectorDecomposition>& sectors,
                             std::optional<std::size_t> physical_sector) {
  model.validate();
  if (trajectory.empty()) throw DomainError("state_dependent_bound: empty trajectory");
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const auto& smp = trajectory[i];
    if (smp.rho.rows() != model.dim || smp.rho.cols() != model.dim) {
      throw DimensionError("state_dependent_bound: state dimension does not match the model");
    }
    if (i > 0 && !(smp.time > trajectory[i - 1].time)) {
      throw DomainError("state_dependent_bound: times must be strictly increasing");
    }
  }
  if (trajectory.size() == 1) return 0.0;

  const SectorDecomposition dec = sectors ? *sectors : SectorDecomposition::trivial(model.dim);
  dec.validate();
  if (dec.dim() != model.dim) throw DimensionError("sectors do not match the model");
  std::vector<std::size_t> todo;
  if (physical_sector) {
    if (*physical_sector >= dec.size()) throw DimensionError("physical sector index out of range");
    todo.push_back(*physical_sector);
  } else {
    for (std::size_t s = 0; s < dec.size(); ++s) todo.push_back(s);
  }
  std::vector<SectorProblem> probs;
  std::vector<ComplexMatrix> ranges;
  for (std::size_t s : todo) {
    probs.emplace_back(model, dec, s);
    if (!probs.back().feasible(kFeasibleTol)) {
      throw DomainError("state_dependent_bound: Hamiltonian outside the noise span");
    }
    ranges.push_back(projector_range(dec.projectors[s].matrix()));
  }

  std::vector<double> values;
  values.reserve(trajectory.size());
  for (const auto& smp : trajectory) {
    const ComplexMatrix rho = 0.5 * (smp.rho + smp.rho.adjoint());
    if (std::abs(rho.trace() - Complex(1.0)) > 1e-8) {
      throw DomainError("state_dependent_bound: state is not unit trace");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
      const auto& prob = probs[k];
      if (prob.m0().rows() == 0) continue;
      const ComplexMatrix block = ranges[k].adjoint() * rho * ranges[k];
      const auto eig = hermitian_eigen(block);
      if (eig.values.size() > 0 && eig.values.minCoeff() < -1e-9) {
        throw DomainError("state_dependent_bound: state is not positive semidefinite");
      }
      const RealVector root = eig.values.cwiseMax(0.0).cwiseSqrt();
      const ComplexMatrix sq = eig.vectors * root.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
      const RealVector b = complex_to_real(prob.m0() * sq);
      const auto& dirs = prob.directions();
      if (dirs.empty()) {
        total += b.squaredNorm();
        continue;
      }
      RealMatrix a(b.size(), static_cast<Eigen::Index>(dirs.size()));
      for (std::size_t i = 0; i < dirs.size(); ++i) {
        a.col(static_cast<Eigen::Index>(i)) = complex_to_real(dirs[i] * sq);
      }
      const RealVector psi = a.completeOrthogonalDecomposition().solve(-b);
      total += (a * psi + b).squaredNorm();
    }
    values.push_back(total);
  }
  double integral = 0.0;
  for (std::size_t i = 1; i < trajectory.size(); ++i) {
    integral += 0.5 * (values[i] + values[i - 1]) * (trajectory[i].time - trajectory[i - 1].time);
  }
  return 4.0 * integral;
}

}  // namespace qfib
