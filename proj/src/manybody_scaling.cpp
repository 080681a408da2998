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

#include "qfib/manybody_scaling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qfib/span_condition.hpp"

namespace qfib {

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

Rational chi(int N, int n, int m) {
  if (m < 0 || m > n || n > N) {
    std::ostringstream msg;
    msg << "chi: need 0 <= m <= n <= N, got N=" << N << " n=" << n << " m=" << m;
    throw DomainError(msg.str());
  }
  return Rational(binomial(N, n) * binomial(n, m), binomial(N, m));
}

std::string to_fraction_string(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) os << '/' << boost::multiprecision::denominator(r);
  return os.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

void LocalModel::validate() const {
  if (N < 1) throw DomainError("local model: N must be at least 1");
  if (k < 1 || k > N || l < 1 || l > N) throw DomainError("local model: need 1 <= k, l <= N");
  if (!(gamma > 0.0)) throw DomainError("local model: gamma must be positive");
  if (hamiltonian_kind == LocalKind::kCustom) {
    const Eigen::Index d = Eigen::Index{1} << k;
    if (custom_hamiltonian.rows() != d || custom_hamiltonian.cols() != d) {
      throw DimensionError("local model: custom Hamiltonian must be 2^k x 2^k");
    }
  }
  if (noise_kind == LocalKind::kCustom) {
    const Eigen::Index d = Eigen::Index{1} << l;
    if (custom_noise.empty()) throw DomainError("local model: custom noise list is empty");
    for (const auto& op : custom_noise) {
      if (op.rows() != d || op.cols() != d) {
        throw DimensionError("local model: custom noise operators must be 2^l x 2^l");
      }
    }
  }
}

std::vector<std::vector<int>> subsets(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == m) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

ComplexMatrix embed_local(const ComplexMatrix& op, const std::vector<int>& sites, int n) {
  const int m = static_cast<int>(sites.size());
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index sub = Eigen::Index{1} << m;
  if (op.rows() != sub || op.cols() != sub) throw DimensionError("embed_local: operator size");
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  auto bit = [&](int site) { return Eigen::Index{1} << (n - 1 - site); };
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::Index in = 0;
    Eigen::Index rest = col;
    for (int s = 0; s < m; ++s) {
      const bool set = (col & bit(sites[static_cast<std::size_t>(s)])) != 0;
      in = (in << 1) | (set ? 1 : 0);
      rest &= ~bit(sites[static_cast<std::size_t>(s)]);
    }
    for (Eigen::Index o = 0; o < sub; ++o) {
      const Complex v = op(o, in);
      if (v == Complex(0.0)) continue;
      Eigen::Index row = rest;
      for (int s = 0; s < m; ++s) {
        if ((o >> (m - 1 - s)) & 1) row |= bit(sites[static_cast<std::size_t>(s)]);
      }
      out(row, col) += v;
    }
  }
  return out;
}

namespace {

ComplexMatrix z_string(int weight) {
  ComplexMatrix z = ComplexMatrix::Identity(1, 1);
  for (int i = 0; i < weight; ++i) z = kron(z, pauli::z());
  return z;
}

void check_subchannel_size(const LocalModel& local, int n) {
  local.validate();
  if (n < std::max(local.k, local.l)) throw DomainError("subchannel: n must be at least max(k, l)");
  if (n > local.N) throw DomainError("subchannel: n cannot exceed N");
  if (n > kMaxSubchannelQubits) {
    std::ostringstream msg;
    msg << "subchannel: n = " << n << " is too large for dense matrices (limit "
        << kMaxSubchannelQubits << ")";
    throw DomainError(msg.str());
  }
}

MarkovModel assemble(const LocalModel& local, int n, double omega_scale, double gamma) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  const ComplexMatrix hloc =
      local.hamiltonian_kind == LocalKind::kZString ? z_string(local.k) : local.custom_hamiltonian;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (const auto& nu : subsets(n, local.k)) h += embed_local(hloc, nu, n);
  std::vector<ComplexMatrix> lloc;
  if (local.noise_kind == LocalKind::kZString) {
    lloc.push_back(z_string(local.l));
  } else {
    lloc = local.custom_noise;
  }
  std::vector<ComplexMatrix> ops;
  const double amp = std::sqrt(gamma);
  for (const auto& mu : subsets(n, local.l)) {
    for (const auto& op : lloc) ops.push_back(amp * embed_local(op, mu, n));
  }
  std::ostringstream label;
  label << "subchannel n=" << n << " k=" << local.k << " l=" << local.l;
  return make_model(omega_scale * h, std::move(ops), 0.0, label.str());
}

}  // namespace

SubchannelSpec build_subchannel(const LocalModel& local, int n) {
  check_subchannel_size(local, n);
  SubchannelSpec s;
  s.n = n;
  s.chi_l = chi(local.N, n, local.l);
  s.chi_k = chi(local.N, n, local.k);
  s.gamma_prime = local.gamma / to_double(s.chi_l);
  s.omega_scale = 1.0 / to_double(s.chi_k);
  s.subchannel_count = binomial(local.N, n);
  s.model = assemble(local, n, s.omega_scale, s.gamma_prime);
  return s;
}

MarkovModel reference_subchannel(const LocalModel& local, int n) {
  check_subchannel_size(local, n);
  return assemble(local, n, 1.0, local.gamma);
}

std::vector<int> zstring_span_weights(int l, int n) {
  std::vector<int> w{0};
  if (l <= n) w.push_back(l);
  for (int o = std::max(0, 2 * l - n); o <= l; ++o) w.push_back(2 * l - 2 * o);
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

bool zstring_span_enumeration(int k, int l, int n) {
  const auto w = zstring_span_weights(l, n);
  return std::find(w.begin(), w.end(), k) != w.end();
}

bool zstring_span_closed_rule(int k, int l, int n) {
  return k == l || (k % 2 == 0 && k <= 2 * l && 2 * n >= 2 * l + k);
}

bool zstring_span_check(int k, int l, int n) {
  if (k < 1 || l < 1 || std::max(k, l) > n) {
    throw DomainError("zstring_span_check: need 1 <= k, l and max(k, l) <= n");
  }
  const bool enumerated = zstring_span_enumeration(k, l, n);
  if (enumerated != zstring_span_closed_rule(k, l, n)) {
    throw std::logic_error("zstring_span_check: enumeration and closed rule disagree");
  }
  return enumerated;
}

std::optional<int> minimal_subchannel_size(int k, int l) {
  if (k == l) return k;
  if (k % 2 == 0 && k <= 2 * l) return l + k / 2;
  return std::nullopt;
}

ScalingResult scaling_bound(const LocalModel& local, int n) {
  check_subchannel_size(local, n);
  ScalingResult out;
  out.n = n;
  const MarkovModel ref = reference_subchannel(local, n);
  bool in_span = false;
  if (local.hamiltonian_kind == LocalKind::kZString && local.noise_kind == LocalKind::kZString) {
    in_span = zstring_span_check(local.k, local.l, n);
  } else {
    in_span = check_membership(ref.hamiltonian.matrix(), build_span(ref)).in_span;
  }
  if (!in_span) {
    out.status = "T2-candidate";
    return out;
  }
  out.bound = solve_bound(ref);
  if (out.bound.status == SolveStatus::kInfeasible) {
    out.status = "T2-candidate";
    return out;
  }
  const Rational cl = chi(local.N, n, local.l);
  const Rational ck = chi(local.N, n, local.k);
  out.weight = Rational(binomial(local.N, n)) * cl / (ck * ck);
  out.coefficient = 4.0 * out.bound.alpha_norm * to_double(out.weight);
  out.exponent = 2 * local.k - local.l;
  out.applicable = true;
  out.status = "linear";
  return out;
}

}  // namespace qfib
