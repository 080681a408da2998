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

// N qubits with a k-local Hamiltonian sum_{|nu| = k} H_nu and l-local noise
// sqrt(gamma) L_mu, |mu| = l. Splitting the dynamics into C(N, n) elementary
// n-qubit subchannels rescales the frequency by 1/chi_k and the rate by
// 1/chi_l, chi_m = C(N, n) C(n, m) / C(N, m), so that
//
//   F_Q <= 4 T ||alpha|| C(N, n) chi_l / chi_k^2  ~  T N^(2k - l)
//
// with ||alpha|| the optimum of the unscaled n-qubit subchannel.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qfib/bound_solver.hpp"
#include "qfib/lindblad_model.hpp"

namespace qfib {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt binomial(int n, int k);

/// C(N, n) C(n, m) / C(N, m), exact. Requires 0 <= m <= n <= N.
Rational chi(int N, int n, int m);

std::string to_fraction_string(const Rational& r);
double to_double(const Rational& r);

enum class LocalKind { kZString, kCustom };

struct LocalModel {
  int N = 1;
  int k = 1;
  int l = 1;
  double gamma = 1.0;
  LocalKind hamiltonian_kind = LocalKind::kZString;
  LocalKind noise_kind = LocalKind::kZString;
  /// 2^k x 2^k term placed on every k-subset (custom kind only).
  ComplexMatrix custom_hamiltonian;
  /// 2^l x 2^l operators placed on every l-subset (custom kind only).
  std::vector<ComplexMatrix> custom_noise;

  void validate() const;
};

inline constexpr int kMaxSubchannelQubits = 10;

struct SubchannelSpec {
  int n = 0;
  Rational chi_l;
  Rational chi_k;
  double gamma_prime = 0.0;
  double omega_scale = 0.0;
  /// Hamiltonian scaled by omega_scale, noise by sqrt(gamma_prime).
  MarkovModel model;
  /// C(N, n) copies of the subchannel.
  BigInt subchannel_count;
};

/// Operator acting as `op` on the qubits listed in `sites` (qubit 0 is the
/// most significant tensor factor) and as identity elsewhere.
ComplexMatrix embed_local(const ComplexMatrix& op, const std::vector<int>& sites, int n);

/// All size-m subsets of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int m);

SubchannelSpec build_subchannel(const LocalModel& local, int n);

/// Subchannel with the original omega and gamma; what the bound is run on.
MarkovModel reference_subchannel(const LocalModel& local, int n);

/// Weights of Z-strings in the span: 0, l, and 2l - 2o for every feasible
/// overlap o of two weight-l supports on n sites.
std::vector<int> zstring_span_weights(int l, int n);
bool zstring_span_enumeration(int k, int l, int n);
bool zstring_span_closed_rule(int k, int l, int n);
/// Enumeration verdict; throws std::logic_error if the closed rule disagrees.
bool zstring_span_check(int k, int l, int n);

/// Smallest n >= max(k, l) with the weight-k Z-string in the span, if any.
std::optional<int> minimal_subchannel_size(int k, int l);

struct ScalingResult {
  bool applicable = false;
  /// "linear" or "T2-candidate"
  std::string status;
  double coefficient = 0.0;
  int exponent = 0;
  int n = 0;
  Rational weight;  // C(N, n) chi_l / chi_k^2
  BoundResult bound;
};

ScalingResult scaling_bound(const LocalModel& local, int n);

}  // namespace qfib
