// Copyright 2026-present the free-edge project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "freeedge/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "freeedge/cauchy.hpp"
#include "freeedge/cli/model_io.hpp"
#include "freeedge/cli/report.hpp"
#include "freeedge/diagonal.hpp"
#include "freeedge/edges.hpp"
#include "freeedge/mc_oracle.hpp"

namespace freeedge::cli {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

struct EdgesFlags {
  std::string model_file;
  std::string method = "all";
  bool singular = false;
  bool json = false;
  std::string out_file;
  double agree_tol = 1e-5;
  std::string sweep;
  std::string dump_file;
};

struct VerifyFlags {
  std::string model_file;
  std::size_t dim = 0;
  long long samples = -1;
  std::uint64_t seed = 0;
  bool sequential = false;
  bool json = false;
  std::string out_file;
};

struct CauchyFlags {
  std::string model_file;
  std::string lambda;
  bool json = false;
  std::string out_file;
};

/// Writes to `out` and, when requested, the identical bytes to a file.
void emit(const std::string& text, const std::string& out_file, std::ostream& out) {
  out << text;
  if (!out_file.empty()) {
    std::ofstream f(out_file, std::ios::binary);
    if (!f) throw InputError("cannot write '" + out_file + "'");
    f << text;
  }
}

std::vector<Method> parse_methods(const std::string& s) {
  if (s == "all") return {Method::Variational, Method::Cauchy, Method::Dilation, Method::Diagonal};
  for (Method m : {Method::Variational, Method::Cauchy, Method::Dilation, Method::Diagonal}) {
    if (s == to_string(m)) return {m};
  }
  throw InputError("unknown method '" + s + "'");
}

struct Sweep {
  std::string path;
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<double> values;
};

Sweep parse_sweep(const std::string& arg) {
  static const std::regex re(R"(^(scale|shift|sigma2\[(\d+)\]\[(\d+)\])=([^:]+):([^:]+):(\d+)$)");
  std::smatch mt;
  if (!std::regex_match(arg, mt, re)) {
    throw InputError("--sweep expects PATH=START:STOP:COUNT with PATH one of scale, shift, "
                     "sigma2[i][j]");
  }
  Sweep s;
  s.path = mt[1].str().substr(0, 6) == "sigma2" ? "sigma2" : mt[1].str();
  if (s.path == "sigma2") {
    s.i = std::stoul(mt[2].str());
    s.j = std::stoul(mt[3].str());
  }
  double a = 0.0;
  double b = 0.0;
  try {
    a = std::stod(mt[4].str());
    b = std::stod(mt[5].str());
  } catch (const std::exception&) {
    throw InputError("--sweep: START and STOP must be numbers");
  }
  const std::size_t n = std::stoul(mt[6].str());
  if (n == 0) throw InputError("--sweep: COUNT must be positive");
  for (std::size_t k = 0; k < n; ++k) {
    s.values.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1));
  }
  return s;
}

std::pair<double, double> solve_pair(const model::FreeModel& fm,
                                     const std::optional<model::VarianceProfile>& profile,
                                     bool diagonal) {
  if (diagonal) {
    const model::VarianceProfile p = profile ? *profile : diagonal::profile_of(fm);
    return {diagonal::diag_upper_edge(p).value, diagonal::diag_lower_edge(p).value};
  }
  return {edges::upper_edge(fm).value, edges::lower_edge(fm).value};
}

std::string run_sweep(const LoadedModel& lm, const Sweep& sweep, bool diagonal) {
  std::string csv = "param,upper,lower\n";
  for (double t : sweep.values) {
    model::FreeModel fm = lm.model;
    std::optional<model::VarianceProfile> profile = lm.profile;
    if (sweep.path == "scale") {
      fm = fm.scaled(t);
      if (profile) profile->sigma2 *= t * t;
    } else if (sweep.path == "shift") {
      fm = fm.shifted(t);
      if (profile) profile->bdiag.array() += t;
    } else {
      if (!profile) throw InputError("--sweep sigma2[i][j] requires a variance-profile model");
      if (sweep.i >= profile->d() || sweep.j >= profile->m()) {
        throw InputError("--sweep: sigma2 index out of range");
      }
      if (t < 0.0) throw InputError("--sweep: variances must be nonnegative");
      profile->sigma2(sweep.i, sweep.j) = t;
      fm = model::from_variance_profile(*profile);
    }
    const auto [up, lo] = solve_pair(fm, profile, diagonal);
    csv += format_number(t) + "," + format_number(up) + "," + format_number(lo) + "\n";
  }
  return csv;
}

MethodEntry run_method(Method method, const model::FreeModel& fm,
                       const std::optional<model::VarianceProfile>& profile) {
  MethodEntry e;
  e.method = method;
  const auto start = Clock::now();
  try {
    switch (method) {
      case Method::Variational:
        e.upper = edges::upper_edge(fm);
        e.lower = edges::lower_edge(fm);
        break;
      case Method::Cauchy:
        e.upper = cauchy::edge_from_cauchy(fm, Side::Upper);
        e.lower = cauchy::edge_from_cauchy(fm, Side::Lower);
        break;
      case Method::Dilation:
        e.upper = edges::dilated_cross_check(fm);
        e.note = "upper edge only";
        break;
      case Method::Diagonal:
        if (!profile && !model::is_diagonal_compatible(fm)) {
          e.skipped = true;
          e.note = "model does not preserve the diagonal subalgebras";
          break;
        }
        {
          const model::VarianceProfile p = profile ? *profile : diagonal::profile_of(fm);
          e.upper = diagonal::diag_upper_edge(p);
          e.lower = diagonal::diag_lower_edge(p);
        }
        break;
    }
  } catch (const Error& err) {
    e.upper.reset();
    e.lower.reset();
    e.error = std::string(to_string(method)) + ": " + err.what();
  }
  e.wall_ms = elapsed_ms(start);
  return e;
}

int cmd_edges(const EdgesFlags& f, std::ostream& out, std::ostream& err) {
  LoadedModel lm = load_model_file(f.model_file);
  if (!f.dump_file.empty()) {
    std::ofstream d(f.dump_file, std::ios::binary);
    if (!d) throw InputError("cannot write '" + f.dump_file + "'");
    d << lm.normalized.dump(2) << '\n';
  }
  const std::vector<Method> methods = parse_methods(f.method);
  if (f.singular) {
    lm.model = lm.model.with_shift(linalg::HermitianMatrix::zero(lm.model.d()));
    if (lm.profile) lm.profile->bdiag.setZero();
  }

  if (!f.sweep.empty()) {
    const Sweep sweep = parse_sweep(f.sweep);
    const bool diag = methods.size() == 1 && methods[0] == Method::Diagonal;
    std::string csv;
    try {
      csv = run_sweep(lm, sweep, diag);
    } catch (const Error& e) {
      err << "error: sweep: " << e.what() << '\n';
      return kExitSolver;
    }
    emit(csv, f.out_file, out);
    return kExitOk;
  }

  RunReport report;
  report.model_digest = model_digest(lm.normalized);
  bool failed = false;
  for (Method m : methods) {
    report.methods.push_back(run_method(m, lm.model, lm.profile));
    if (!report.methods.back().error.empty()) {
      failed = true;
      err << "error: " << report.methods.back().error << '\n';
    }
  }
  report.agreement = agreement_table(report.methods);
  if (f.singular) {
    for (const auto& m : report.methods) {
      if (m.upper && m.lower) {
        report.singular = SingularValues{std::sqrt(std::max(0.0, m.upper->value)),
                                         std::sqrt(std::max(0.0, m.lower->value))};
        break;
      }
    }
    report.notes.push_back("b set to 0; edges are squared extreme singular values of x");
  }
  const double worst = report.agreement.max_difference();
  if (worst > f.agree_tol) {
    report.notes.push_back("methods disagree by " + format_number(worst) + " > " +
                           format_number(f.agree_tol));
  }
  emit(f.json ? report_json_text(report) : render_text(report), f.out_file, out);
  if (failed) return kExitSolver;
  if (worst > f.agree_tol) {
    err << "error: methods disagree by " << format_number(worst) << '\n';
    return kExitDisagree;
  }
  return kExitOk;
}

int cmd_verify(const VerifyFlags& f, std::ostream& out, std::ostream& err) {
  const LoadedModel lm = load_model_file(f.model_file);
  if (f.samples < 1) throw InputError("--samples must be at least 1");
  mc::McConfig cfg;
  cfg.dim = f.dim;
  cfg.samples = static_cast<std::size_t>(f.samples);
  cfg.seed = f.seed;
  cfg.parallel = !f.sequential;
  try {
    cfg.check();
  } catch (const Error& e) {
    throw InputError(e.what());
  }

  RunReport report;
  report.model_digest = model_digest(lm.normalized);
  report.methods.push_back(run_method(Method::Variational, lm.model, lm.profile));
  const MethodEntry& var = report.methods.back();
  if (!var.error.empty()) {
    err << "error: " << var.error << '\n';
    return kExitSolver;
  }
  report.agreement = agreement_table(report.methods);

  McSection mc;
  mc.config = cfg;
  const auto start = Clock::now();
  mc.stats = mc::mc_edges(lm.model, cfg);
  mc.wall_ms = elapsed_ms(start);
  mc.predicted_max = var.upper->value;
  mc.predicted_min = var.lower->value;
  mc.deviation_max =
      std::abs(mc.stats.mean_max - mc.predicted_max) / std::max(1.0, std::abs(mc.predicted_max));
  mc.deviation_min =
      std::abs(mc.stats.mean_min - mc.predicted_min) / std::max(1.0, std::abs(mc.predicted_min));
  report.mc = std::move(mc);
  report.notes.push_back("Monte Carlo is advisory; finite-N edges carry an O(N^{-2/3}) bias");
  emit(f.json ? report_json_text(report) : render_text(report), f.out_file, out);
  return kExitOk;
}

linalg::Complex parse_lambda(const std::string& s) {
  const auto comma = s.find(',');
  try {
    std::size_t used = 0;
    const std::string re = s.substr(0, comma);
    const double r = std::stod(re, &used);
    if (used != re.size()) throw std::invalid_argument(s);
    double i = 0.0;
    if (comma != std::string::npos) {
      const std::string im = s.substr(comma + 1);
      i = std::stod(im, &used);
      if (used != im.size()) throw std::invalid_argument(s);
    }
    if (!std::isfinite(r) || !std::isfinite(i)) throw std::invalid_argument(s);
    return {r, i};
  } catch (const std::exception&) {
    throw InputError("--lambda expects RE or RE,IM, got '" + s + "'");
  }
}

int cmd_cauchy(const CauchyFlags& f, std::ostream& out, std::ostream& err) {
  const LoadedModel lm = load_model_file(f.model_file);
  const linalg::Complex lambda = parse_lambda(f.lambda);
  cauchy::CauchyPoint pt;
  try {
    pt = cauchy::solve_G(lm.model, lambda);
  } catch (const Error& e) {
    err << "error: cauchy: " << e.what() << '\n';
    return kExitSolver;
  }
  emit(f.json ? to_json(pt).dump(2) + "\n" : render_text(pt), f.out_file, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extreme eigenvalues of x x* + b (x) 1 for free semicircular x", "free_edge"};
  app.require_subcommand(1);

  EdgesFlags ef;
  auto* edges_cmd = app.add_subcommand("edges", "compute both spectral edges");
  edges_cmd->add_option("model", ef.model_file, "model file (JSON)")->required();
  edges_cmd->add_option("--method", ef.method, "variational|cauchy|dilation|diagonal|all")
      ->capture_default_str();
  edges_cmd->add_flag("--singular", ef.singular, "set b = 0 and report s_max, s_min of x");
  edges_cmd->add_flag("--json", ef.json, "machine-readable report");
  edges_cmd->add_option("--out", ef.out_file, "also write the report to this file");
  edges_cmd->add_option("--agree-tol", ef.agree_tol, "allowed difference between methods")
      ->capture_default_str();
  edges_cmd->add_option("--sweep", ef.sweep, "PATH=START:STOP:COUNT, emits CSV");
  edges_cmd->add_option("--dump-normalized", ef.dump_file, "write the canonical model file");

  VerifyFlags vf;
  auto* verify_cmd = app.add_subcommand("verify", "compare with a seeded Monte Carlo oracle");
  verify_cmd->add_option("model", vf.model_file, "model file (JSON)")->required();
  verify_cmd->add_option("--dim", vf.dim, "GUE size N")->required();
  verify_cmd->add_option("--samples", vf.samples, "number of samples")->required();
  verify_cmd->add_option("--seed", vf.seed, "random seed")->capture_default_str();
  verify_cmd->add_flag("--sequential", vf.sequential, "run samples on one thread");
  verify_cmd->add_flag("--json", vf.json, "machine-readable report");
  verify_cmd->add_option("--out", vf.out_file, "also write the report to this file");

  CauchyFlags cf;
  auto* cauchy_cmd = app.add_subcommand("cauchy", "solve the fixed-point equation for G(lambda)");
  cauchy_cmd->add_option("model", cf.model_file, "model file (JSON)")->required();
  cauchy_cmd->add_option("--lambda", cf.lambda, "RE or RE,IM")->required();
  cauchy_cmd->add_flag("--json", cf.json, "machine-readable output");
  cauchy_cmd->add_option("--out", cf.out_file, "also write the output to this file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (*edges_cmd) return cmd_edges(ef, out, err);
    if (*verify_cmd) return cmd_verify(vf, out, err);
    return cmd_cauchy(cf, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace freeedge::cli
