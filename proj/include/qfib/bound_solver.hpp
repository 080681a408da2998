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

// Linear-in-T precision bound F_Q <= 4 ||alpha|| T.
//
// With L the stacked noise operators and h = (h00, hvec, hmat) the free
// Kraus mixing coefficients,
//
//   beta  = H + h00 1 + hvec^dag L + L^dag hvec + L^dag hmat L
//   alpha = M^dag M,   M_j = hvec_j 1 + sum_j' hmat_jj' L_j'
//
// and the bound is min ||alpha|| subject to beta = 0.
//
// Sector-graded version: for charge sectors with ranges V_s write
// X^{ms}_j = V_m^dag L_j V_s. Each sector s owns its own h00_s, hvec(:, s)
// and one Hermitian block hmat^{(m,s)} per target sector m:
//
//   beta_s = H_ss + h00_s + sum_j (conj(h_sj) X^{ss}_j + h_sj X^{ss dag}_j)
//            + sum_m sum_jj' hmat^{(m,s)}_jj' X^{ms dag}_j X^{ms}_j'
//   M rows (j; m, s) = delta_ms h_sj 1 + sum_j' hmat^{(m,s)}_jj' X^{ms}_j'
//
// The sectors decouple, so the bound is the largest per-sector optimum (or
// the physical sector's alone). For lossy interferometers the free parameter
// xi of the closed-form analysis is not a separate knob: inside a fixed-N
// sector n_1 + n_2 = N, so trading between h00 and the diagonal of hmat
// reproduces it.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfib/lindblad_model.hpp"

namespace qfib {

struct HCoefficients {
  /// One real scalar per sector.
  std::vector<double> h00;
  /// J x K, column s belongs to sector s.
  ComplexMatrix hvec;
  /// K*K Hermitian J x J blocks; hmat[m * K + s] couples sector s to m.
  std::vector<ComplexMatrix> hmat;

  /// All-zero coefficients for J noise operators and K sectors.
  static HCoefficients zeros(std::size_t num_noise, std::size_t num_sectors = 1);
  std::size_t num_sectors() const { return h00.size(); }
};

enum class SolveStatus { kOptimal, kInfeasible, kMaxIterations };
enum class SolveMethod { kInteriorPoint, kBisection };

std::string to_string(SolveStatus s);
std::string to_string(SolveMethod m);

struct SolveOptions {
  double tol = 1e-8;
  SolveMethod method = SolveMethod::kInteriorPoint;
  /// Run the other method as well and record the relative disagreement.
  bool cross_check = false;
  int max_iterations = 2000;
};

struct BoundResult {
  double alpha_norm = 0.0;
  double qfi_coefficient = 0.0;
  HCoefficients optimizer;
  double beta_residual = 0.0;
  SolveStatus status = SolveStatus::kOptimal;
  SolveMethod method = SolveMethod::kInteriorPoint;
  int iterations = 0;
  /// Per-sector optima (NaN for sectors that were not solved).
  std::vector<double> sector_alpha;
  /// Value from the other method when cross-checking, else NaN.
  double cross_check_alpha = 0.0;
  double cross_check_relative_gap = 0.0;
  bool cross_checked = false;
  /// Noise-index blocks dropped because P_m L_j P_s vanishes.
  std::size_t pruned_blocks = 0;
  std::vector<std::string> diagnostics;
};

/// beta^(1) and alpha^(1), sectorless.
HermitianMatrix beta1(const MarkovModel& model, const HCoefficients& h);
HermitianMatrix alpha1(const MarkovModel& model, const HCoefficients& h);
/// Stack of the J rows of M, shape (J d) x d.
ComplexMatrix stacked_m(const MarkovModel& model, const HCoefficients& h);

/// Sector-graded versions; the result is block diagonal in the sectors and
/// expressed on the full space.
HermitianMatrix beta1(const MarkovModel& model, const SectorDecomposition& sectors,
                      const HCoefficients& h);
HermitianMatrix alpha1(const MarkovModel& model, const SectorDecomposition& sectors,
                       const HCoefficients& h);

/// One sector's problem in real coordinates: beta_s = 0 is A theta = b and
/// M(theta) is affine. The feasible set is theta_p + Z psi, with Z chosen so
/// that the directions N_i = dM/dpsi_i are linearly independent.
class SectorProblem {
 public:
  SectorProblem(const MarkovModel& model, const SectorDecomposition& sectors, std::size_t sector);

  std::size_t sector() const { return sector_; }
  Eigen::Index rank() const { return rank_; }
  std::size_t num_coordinates() const { return coords_.size(); }
  bool feasible(double tol) const;
  double constraint_residual() const { return constraint_residual_; }
  std::size_t pruned_blocks() const { return pruned_; }

  const ComplexMatrix& m0() const { return m0_; }
  const std::vector<ComplexMatrix>& directions() const { return dirs_; }
  ComplexMatrix m_of(const RealVector& psi) const;
  /// beta_s as a function of raw coordinates.
  ComplexMatrix beta_of_theta(const RealVector& theta) const;
  RealVector theta_of(const RealVector& psi) const;
  /// Writes this sector's part of h from feasible coordinates psi.
  void write_coefficients(const RealVector& psi, HCoefficients& h) const;

 private:
  enum class Kind { kH00, kHvecRe, kHvecIm, kDiag, kOffRe, kOffIm };
  struct Coordinate {
    Kind kind;
    std::size_t target;  // sector m
    std::size_t j;
    std::size_t j2;
  };

  std::size_t sector_;
  std::size_t num_sectors_;
  std::size_t num_noise_;
  Eigen::Index rank_;
  ComplexMatrix h_block_;
  std::vector<Coordinate> coords_;
  std::vector<ComplexMatrix> b_cols_;
  std::vector<ComplexMatrix> c_cols_;
  RealVector theta_p_;
  RealMatrix z_;
  ComplexMatrix m0_;
  std::vector<ComplexMatrix> dirs_;
  double constraint_residual_ = 0.0;
  double h_scale_ = 1.0;
  std::size_t pruned_ = 0;
};

/// min over psi of sigma_max(M0 + sum psi_i N_i)^2.
struct SpectralMinResult {
  double value = 0.0;
  RealVector psi;
  int iterations = 0;
  bool converged = true;
};

/// Primal barrier method on -log det(tau 1 - M^dag M), the Schur complement
/// of the LMI [[tau 1, M^dag], [M, 1]] >= 0.
SpectralMinResult minimize_spectral_ipm(const ComplexMatrix& m0,
                                        const std::vector<ComplexMatrix>& dirs, double rel_tol,
                                        int max_iterations);

/// Bisection on lambda with a feasibility oracle for
/// [[sqrt(lambda) 1, M^dag], [M, sqrt(lambda) 1]] >= 0. The oracle minimizes
/// the log-sum-exp smoothing of lambda_max(M^dag M) with decreasing
/// temperature from psi = 0.
SpectralMinResult minimize_spectral_bisection(const ComplexMatrix& m0,
                                              const std::vector<ComplexMatrix>& dirs,
                                              double tol, int max_iterations);

/// Minimizes ||alpha|| subject to beta = 0. With a physical sector only that
/// sector's constraint and norm are used.
BoundResult solve_bound(const MarkovModel& model,
                        const std::optional<SectorDecomposition>& sectors = std::nullopt,
                        std::optional<std::size_t> physical_sector = std::nullopt,
                        const SolveOptions& options = {});

/// 4 * alpha_norm * T. Throws DomainError unless the result is optimal.
double bound_qfi(const BoundResult& result, double T);

struct TrajectorySample {
  double time;
  ComplexMatrix rho;
};

/// 4 * integral of min_{beta = 0} Tr(alpha rho_t) dt by the trapezoid rule.
double state_dependent_bound(const MarkovModel& model,
                             const std::vector<TrajectorySample>& trajectory,
                             const std::optional<SectorDecomposition>& sectors = std::nullopt,
                             std::optional<std::size_t> physical_sector = std::nullopt);

}  // namespace qfib
