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

#include "qfib/commands.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "qfib/bound_solver.hpp"
#include "qfib/error_correction.hpp"
#include "qfib/manybody_scaling.hpp"
#include "qfib/model_io.hpp"
#include "qfib/model_zoo.hpp"
#include "qfib/qfi_oracle.hpp"
#include "qfib/span_condition.hpp"

#ifndef QFIB_VERSION
#define QFIB_VERSION "0.0.0"
#endif

namespace qfib::cli {

using nlohmann::json;

std::string version() { return QFIB_VERSION; }

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return os.str();
}

namespace {

// Collected output of one command; written to --json on exit.
struct RunReport {
  std::string command;
  std::string inputs_digest;
  json results = json::object();
  json tolerances = json::object();
  std::vector<std::string> diagnostics;

  void write(const std::string& path) const {
    if (path.empty()) return;
    json doc;
    doc["command"] = command;
    doc["version"] = version();
    doc["inputs_digest"] = inputs_digest;
    doc["results"] = results;
    doc["tolerances"] = tolerances;
    doc["diagnostics"] = diagnostics;
    doc["seed"] = nullptr;
    std::ofstream f(path);
    if (!f) throw ParseError(path + ": cannot write report");
    f << doc.dump(2) << '\n';
  }
};

struct LoadedModel {
  ModelFile file;
  std::string digest;
  std::vector<std::string> warnings;
};

LoadedModel load(const std::string& path, std::ostream& err) {
  const std::string text = read_text_file(path);
  LoadedModel lm{parse_model(text, path), sha256_hex(text), {}};
  // Hermiticity is enforced by symmetrization; say so when it was not a rounding fix.
  const auto& h = lm.file.model.hamiltonian;
  const double scale = h.matrix().norm();
  if (h.symmetrization_correction() > kHermitianWarnThreshold * scale) {
    std::ostringstream msg;
    msg << "Hamiltonian was not Hermitian; symmetrized (correction " << h.symmetrization_correction()
        << ")";
    lm.warnings.push_back(msg.str());
    err << "warning: " << msg.str() << '\n';
  }
  return lm;
}

std::optional<SectorDecomposition> make_sectors(const LoadedModel& m, const std::string& mode) {
  if (mode == "none") return std::nullopt;
  if (mode == "charge") {
    if (!m.file.charge) throw ParseError("--sectors charge: the model file has no \"charge\" field");
    return sectorize(m.file.model, *m.file.charge);
  }
  throw ParseError("--sectors must be \"none\" or \"charge\", got \"" + mode + "\"");
}

json cjson(Complex z) { return json::array({z.real(), z.imag()}); }

json mjson(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(cjson(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

void write_file(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw ParseError(path + ": cannot write file");
  f << text;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace

int cmd_check_span(const CheckSpanOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const LoadedModel lm = load(opt.model_path, err);
    const MarkovModel& model = lm.file.model;
    const auto sectors = make_sectors(lm, opt.sectors);
    RunReport rep;
    rep.diagnostics = lm.warnings;
    rep.command = "check-span";
    rep.inputs_digest = lm.digest;
    rep.tolerances["membership"] = opt.tol;
    rep.tolerances["rank_threshold"] = kSpanRankThreshold;
    if (!is_canonical(model)) rep.diagnostics.push_back("noise operators are not in canonical form");

    std::vector<SpanReport> reports;
    if (sectors) {
      reports = sector_check(model, *sectors, opt.tol);
    } else {
      reports.push_back(check_membership(model.hamiltonian.matrix(), build_span(model), opt.tol));
    }
    const bool in_span = all_in_span(reports);
    json per = json::array();
    out << std::setprecision(6);
    for (std::size_t k = 0; k < reports.size(); ++k) {
      const auto& r = reports[k];
      const double hp = r.h_perp.matrix().norm();
      if (sectors) out << "sector " << k << " (charge " << sectors->charges[k] << "): ";
      out << (r.in_span ? "in span" : "not in span") << ", residual " << r.residual
          << ", ||H_perp||_F " << hp << (r.marginal ? " [marginal]" : "") << '\n';
      if (r.marginal) rep.diagnostics.push_back("marginal verdict in sector " + std::to_string(k));
      per.push_back({{"in_span", r.in_span}, {"residual", r.residual}, {"h_perp_norm", hp},
                     {"marginal", r.marginal}});
    }
    out << (in_span ? "verdict: LINEAR-T bound applies" : "verdict: T2-candidate") << '\n';
    rep.results["in_span"] = in_span;
    rep.results["sectors"] = per;
    rep.results["verdict"] = in_span ? "linear" : "T2-candidate";
    rep.write(opt.json_path);
    return in_span ? kExitOk : kExitNotApplicable;
  });
}

int cmd_bound(const BoundOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const LoadedModel lm = load(opt.model_path, err);
    const auto sectors = make_sectors(lm, opt.sectors);
    if (opt.sector_index && !sectors) throw ParseError("--sector-index needs --sectors charge");
    SolveOptions so;
    so.tol = opt.tol;
    if (opt.method == "ipm") {
      so.method = SolveMethod::kInteriorPoint;
    } else if (opt.method == "bisection") {
      so.method = SolveMethod::kBisection;
    } else {
      throw ParseError("--method must be \"ipm\" or \"bisection\"");
    }
    so.cross_check = opt.cross_check;
    const BoundResult r = solve_bound(lm.file.model, sectors, opt.sector_index, so);

    RunReport rep;
    rep.command = "bound";
    rep.inputs_digest = lm.digest;
    rep.tolerances["solver"] = opt.tol;
    rep.tolerances["feasibility"] = kSpanMembershipTol;
    rep.diagnostics = lm.warnings;
    rep.diagnostics.insert(rep.diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
    rep.results["status"] = to_string(r.status);
    rep.results["method"] = to_string(r.method);
    if (r.status == SolveStatus::kInfeasible) {
      out << "T2-candidate: H is outside the noise span, the linear bound does not apply\n";
      rep.write(opt.json_path);
      return kExitNotApplicable;
    }
    out << std::setprecision(12);
    out << "alpha_norm      " << r.alpha_norm << '\n';
    out << "qfi_coefficient " << r.qfi_coefficient << "   (F_Q <= qfi_coefficient * T)\n";
    out << "beta_residual   " << r.beta_residual << '\n';
    out << "status          " << to_string(r.status) << " (" << to_string(r.method) << ", "
        << r.iterations << " iterations)\n";
    if (r.cross_checked) {
      out << "cross-check     " << r.cross_check_alpha << " (relative gap "
          << r.cross_check_relative_gap << ")\n";
    }
    for (const auto& d : r.diagnostics) out << "note: " << d << '\n';
    rep.results["alpha_norm"] = r.alpha_norm;
    rep.results["qfi_coefficient"] = r.qfi_coefficient;
    rep.results["beta_residual"] = r.beta_residual;
    rep.results["iterations"] = r.iterations;
    json sec = json::array();
    for (double a : r.sector_alpha) sec.push_back(finite_or_null(a));
    rep.results["sector_alpha"] = sec;
    if (r.cross_checked) {
      rep.results["cross_check_alpha"] = r.cross_check_alpha;
      rep.results["cross_check_relative_gap"] = r.cross_check_relative_gap;
    }
    json optj;
    optj["h00"] = r.optimizer.h00;
    optj["hvec"] = mjson(r.optimizer.hvec);
    json blocks = json::array();
    for (const auto& b : r.optimizer.hmat) blocks.push_back(mjson(b));
    optj["hmat"] = blocks;
    rep.results["optimizer"] = optj;
    rep.write(opt.json_path);
    return kExitOk;
  });
}

int cmd_qfi_sim(const QfiSimOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const LoadedModel lm = load(opt.model_path, err);
    const MarkovModel& model = lm.file.model;
    const auto sectors = make_sectors(lm, opt.sectors);
    if (opt.T_list.empty()) throw ParseError("--T needs at least one time");
    if (!(opt.dt > 0.0)) throw ParseError("--dt must be positive");
    for (double t : opt.T_list) {
      if (!(t > opt.dt)) throw ParseError("every T must exceed dt");
    }
    std::string digest = lm.digest;
    std::optional<ComplexMatrix> rho0;
    if (opt.input != "max-entangled") {
      const std::string text = read_text_file(opt.input);
      rho0 = parse_state(text, opt.input);
      digest = sha256_hex(lm.digest + sha256_hex(text));
    }
    RunReport rep;
    rep.command = "qfi-sim";
    rep.diagnostics = lm.warnings;
    rep.inputs_digest = digest;
    rep.tolerances["dt"] = opt.dt;
    rep.tolerances["eps_cut"] = 1e-12;
    rep.tolerances["base_slack"] = 1e-6;
    const BoundResult b = solve_bound(model, sectors, opt.sector_index);
    if (b.status != SolveStatus::kOptimal) {
      out << "T2-candidate: no linear bound to compare against (" << to_string(b.status) << ")\n";
      rep.results["status"] = to_string(b.status);
      rep.write(opt.json_path);
      return kExitNotApplicable;
    }
    const BoundCheckReport check = verify_bound(model, rho0, opt.T_list, b, opt.dt);
    const std::string csv = bound_check_csv(check);
    out << csv;
    write_file(opt.csv_path, csv);
    json rows = json::array();
    for (const auto& r : check.rows) {
      rows.push_back({{"T", r.T}, {"qfi", r.qfi}, {"bound", r.bound}, {"margin", r.margin},
                      {"slack", r.slack}, {"error_estimate", r.error_estimate}, {"passed", r.passed}});
      std::ostringstream d;
      d << "integrator error estimate at T=" << r.T << ": " << r.error_estimate;
      rep.diagnostics.push_back(d.str());
    }
    rep.results["rows"] = rows;
    rep.results["qfi_coefficient"] = b.qfi_coefficient;
    rep.results["all_passed"] = check.all_passed;
    rep.write(opt.json_path);
    if (!check.all_passed) {
      err << "bound violated beyond the integrator slack\n";
      return kExitViolation;
    }
    return kExitOk;
  });
}

int cmd_ec(const EcOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const LoadedModel lm = load(opt.model_path, err);
    const MarkovModel& model = lm.file.model;
    RunReport rep;
    rep.command = "ec";
    rep.diagnostics = lm.warnings;
    rep.inputs_digest = lm.digest;
    rep.tolerances["tol_a"] = 1e-8;
    rep.tolerances["tol_bc"] = 1e-8;
    CodePair code;
    try {
      if (opt.code == "max-entangled") {
        code = maximally_entangled_code(model);
      } else if (opt.code == "universal") {
        code = universal_code(model);
      } else {
        const std::string text = read_text_file(opt.code);
        code = parse_code(text, opt.code);
        rep.inputs_digest = sha256_hex(lm.digest + sha256_hex(text));
      }
    } catch (const DomainError& e) {
      out << "no code: " << e.what() << '\n';
      out << "the Hamiltonian lies in the noise span, so the QFI grows at most linearly in T\n";
      rep.results["verdict"] = false;
      rep.results["reason"] = e.what();
      rep.write(opt.json_path);
      return kExitNotApplicable;
    }
    const EcReport r = check_conditions(model, code);
    out << std::setprecision(6);
    out << "code            " << opt.code << " (ancilla dim " << code.ancilla_dim << ")\n";
    out << "cond (a) |<phi|H|xi>|  " << r.cond_a_value << '\n';
    out << "cond (b) residual      " << r.cond_b_residual << '\n';
    out << "cond (c) residual      " << r.cond_c_residual << '\n';
    out << "first-order residual   " << r.aux_residual << '\n';
    out << "verdict                " << (r.verdict ? "valid code" : "conditions violated") << '\n';
    rep.results["cond_a_value"] = r.cond_a_value;
    rep.results["cond_b_residual"] = r.cond_b_residual;
    rep.results["cond_c_residual"] = r.cond_c_residual;
    rep.results["aux_residual"] = r.aux_residual;
    rep.results["verdict"] = r.verdict;
    rep.results["ancilla_dim"] = code.ancilla_dim;
    if (opt.simulate && r.verdict) {
      const RecoveryMap rec = build_recovery(model, code);
      std::ostringstream csv;
      csv << std::setprecision(12) << "T,qfi,reference\n";
      json rows = json::array();
      double c = 0.0;
      for (double t : opt.T_list) {
        const EcSimulation s = simulate_ec(model, code, rec, t, opt.dt);
        c = s.c;
        const double ref = 4.0 * s.c * s.c * t * t;
        csv << t << ',' << s.qfi << ',' << ref << '\n';
        rows.push_back({{"T", t}, {"qfi", s.qfi}, {"reference", ref}});
        if (s.c_remainder > 1e-8) {
          rep.diagnostics.push_back("C([H, phi]) has a component off the code rotation");
        }
      }
      out << "c                      " << c << '\n' << csv.str();
      write_file(opt.csv_path, csv.str());
      rep.results["c"] = c;
      rep.results["simulation"] = rows;
      rep.results["recovery_trace_residual"] = rec.trace_residual();
    } else if (opt.simulate) {
      rep.diagnostics.push_back("simulation skipped: code conditions fail");
    }
    rep.write(opt.json_path);
    return r.verdict ? kExitOk : kExitNotApplicable;
  });
}

int cmd_scaling(const ScalingOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::ostringstream args;
    args << "N=" << opt.N << " k=" << opt.k << " l=" << opt.l << " n=" << opt.n.value_or(-1)
         << " gamma=" << std::setprecision(17) << opt.gamma
         << " table=" << opt.table_klmax.value_or(-1);
    RunReport rep;
    rep.command = "scaling";
    rep.inputs_digest = sha256_hex(args.str());
    rep.tolerances["solver"] = SolveOptions{}.tol;

    std::vector<std::pair<int, int>> grid;
    if (opt.table_klmax) {
      if (*opt.table_klmax < 1) throw ParseError("--table must be at least 1");
      for (int k = 1; k <= *opt.table_klmax; ++k) {
        for (int l = 1; l <= *opt.table_klmax; ++l) grid.emplace_back(k, l);
      }
    } else {
      grid.emplace_back(opt.k, opt.l);
    }
    std::ostringstream csv;
    csv << std::setprecision(12);
    csv << "k,l,n,in_span,exponent,coefficient,chi_l,chi_k,chi_l_float,chi_k_float\n";
    json rows = json::array();
    bool all_applicable = true;
    for (auto [k, l] : grid) {
      int n = 0;
      if (opt.n && !opt.table_klmax) {
        n = *opt.n;
      } else {
        n = minimal_subchannel_size(k, l).value_or(std::max(k, l));
      }
      if (n > kMaxSubchannelQubits) {
        throw ParseError("n = " + std::to_string(n) + " exceeds the dense limit of " +
                         std::to_string(kMaxSubchannelQubits) + " qubits");
      }
      if (n > opt.N) {
        rep.diagnostics.push_back("skipped k=" + std::to_string(k) + " l=" + std::to_string(l) +
                                  ": subchannel larger than N");
        continue;
      }
      LocalModel local;
      local.N = opt.N;
      local.k = k;
      local.l = l;
      local.gamma = opt.gamma;
      const ScalingResult s = scaling_bound(local, n);
      const Rational cl = chi(opt.N, n, l);
      const Rational ck = chi(opt.N, n, k);
      all_applicable = all_applicable && s.applicable;
      csv << k << ',' << l << ',' << n << ',' << (s.applicable ? "true" : "false") << ',';
      if (s.applicable) {
        csv << s.exponent << ',' << s.coefficient;
      } else {
        csv << "T2-candidate,";
      }
      csv << ',' << to_fraction_string(cl) << ',' << to_fraction_string(ck) << ',' << to_double(cl)
          << ',' << to_double(ck) << '\n';
      json row = {{"k", k},
                  {"l", l},
                  {"n", n},
                  {"in_span", s.applicable},
                  {"status", s.status},
                  {"chi_l", to_fraction_string(cl)},
                  {"chi_k", to_fraction_string(ck)}};
      if (s.applicable) {
        row["exponent"] = s.exponent;
        row["coefficient"] = s.coefficient;
        row["alpha_norm"] = s.bound.alpha_norm;
      }
      rows.push_back(row);
    }
    out << csv.str();
    write_file(opt.csv_path, csv.str());
    rep.results["rows"] = rows;
    rep.write(opt.json_path);
    if (opt.table_klmax) return kExitOk;
    return all_applicable ? kExitOk : kExitNotApplicable;
  });
}

int cmd_export(const ExportOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto zoo = zoo_models();
    if (opt.list || opt.name.empty()) {
      for (const auto& z : zoo) {
        out << z.name;
        if (z.physical_sector) out << "  (use --sectors charge --sector-index " << *z.physical_sector << ")";
        out << '\n';
      }
      return kExitOk;
    }
    for (const auto& z : zoo) {
      if (z.name != opt.name) continue;
      const std::string text = serialize_model(z.model, z.charge);
      if (opt.out_path.empty()) {
        out << text;
      } else {
        write_file(opt.out_path, text);
      }
      return kExitOk;
    }
    throw ParseError("unknown zoo model \"" + opt.name + "\" (see `export --list`)");
  });
}

}  // namespace qfib::cli
