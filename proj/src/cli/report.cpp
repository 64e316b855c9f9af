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

#include "freeedge/cli/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "freeedge/cli/model_io.hpp"

namespace freeedge::cli {
namespace {

using nlohmann::json;

std::string fixed(double x, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json table_json(const std::vector<std::vector<std::optional<double>>>& t) {
  json rows = json::array();
  for (const auto& row : t) {
    json r = json::array();
    for (const auto& v : row) r.push_back(optional_json(v));
    rows.push_back(std::move(r));
  }
  return rows;
}

void render_matrix(std::ostringstream& out, const char* name, const linalg::ComplexMatrix& m) {
  out << name << " =\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << "  ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const auto z = m(i, j);
      char buf[96];
      std::snprintf(buf, sizeof buf, "  %14.10f%+14.10fi", z.real(), z.imag());
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double AgreementTable::max_difference() const {
  double worst = 0.0;
  for (const auto* t : {&upper, &lower}) {
    for (const auto& row : *t) {
      for (const auto& v : row) {
        if (v) worst = std::max(worst, *v);
      }
    }
  }
  return worst;
}

AgreementTable agreement_table(const std::vector<MethodEntry>& methods) {
  AgreementTable t;
  const std::size_t k = methods.size();
  for (const auto& m : methods) t.methods.emplace_back(to_string(m.method));
  t.upper.assign(k, std::vector<std::optional<double>>(k));
  t.lower.assign(k, std::vector<std::optional<double>>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const auto& a = methods[i];
      const auto& b = methods[j];
      if (a.upper && b.upper) t.upper[i][j] = std::abs(a.upper->value - b.upper->value);
      if (a.lower && b.lower) t.lower[i][j] = std::abs(a.lower->value - b.lower->value);
    }
  }
  return t;
}

json to_json(const EdgeResult& r) {
  return json{{"value", r.value},
              {"certificate", complex_matrix_json(r.certificate.matrix())},
              {"certificate_value", r.certificate_value},
              {"flatness_residual", r.flatness_residual},
              {"iterations", r.iterations},
              {"method", std::string(to_string(r.method))},
              {"side", std::string(to_string(r.side))},
              {"converged", r.converged},
              {"boundary_escape", r.boundary_escape},
              {"note", r.note}};
}

json to_json(const RunReport& report) {
  json doc;
  doc["model_digest"] = report.model_digest;
  doc["methods"] = json::array();
  for (const auto& m : report.methods) {
    json e;
    e["method"] = std::string(to_string(m.method));
    e["upper"] = m.upper ? to_json(*m.upper) : json(nullptr);
    e["lower"] = m.lower ? to_json(*m.lower) : json(nullptr);
    e["wall_time_ms"] = m.wall_ms;
    e["skipped"] = m.skipped;
    e["error"] = m.error;
    e["note"] = m.note;
    doc["methods"].push_back(std::move(e));
  }
  doc["agreement"] = {{"methods", report.agreement.methods},
                      {"upper", table_json(report.agreement.upper)},
                      {"lower", table_json(report.agreement.lower)}};
  if (report.singular) {
    doc["singular"] = {{"s_max", report.singular->s_max}, {"s_min", report.singular->s_min}};
  }
  if (report.mc) {
    const auto& mc = *report.mc;
    json samples = json::array();
    for (const auto& [hi, lo] : mc.stats.per_sample) samples.push_back({hi, lo});
    doc["mc"] = {{"dim", mc.config.dim},
                 {"samples", mc.config.samples},
                 {"seed", mc.config.seed},
                 {"mean_max", mc.stats.mean_max},
                 {"mean_min", mc.stats.mean_min},
                 {"sd_max", mc.stats.sd_max},
                 {"sd_min", mc.stats.sd_min},
                 {"per_sample", std::move(samples)},
                 {"predicted_max", mc.predicted_max},
                 {"predicted_min", mc.predicted_min},
                 {"deviation_max", mc.deviation_max},
                 {"deviation_min", mc.deviation_min},
                 {"highlight", mc.deviation_max > kDeviationHighlight ||
                                   mc.deviation_min > kDeviationHighlight},
                 {"wall_time_ms", mc.wall_ms}};
  }
  doc["notes"] = report.notes;
  return doc;
}

json to_json(const cauchy::CauchyPoint& pt) {
  return json{{"lambda", {pt.lambda.real(), pt.lambda.imag()}},
              {"G", complex_matrix_json(pt.G)},
              {"H", complex_matrix_json(pt.H)},
              {"residual", pt.residual},
              {"converged", pt.converged},
              {"iterations", pt.iterations},
              {"sign", std::string(cauchy::to_string(pt.sign))}};
}

std::string report_json_text(const RunReport& report) { return to_json(report).dump(2) + "\n"; }

std::string render_text(const RunReport& report) {
  std::ostringstream out;
  out << "model " << report.model_digest << "\n\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %20s %20s %12s %10s\n", "method", "upper", "lower",
                "flatness", "time[ms]");
  out << line;
  for (const auto& m : report.methods) {
    const std::string name(to_string(m.method));
    if (m.skipped) {
      out << name << ": skipped (" << m.note << ")\n";
      continue;
    }
    if (!m.error.empty()) {
      out << name << ": error: " << m.error << '\n';
      continue;
    }
    const std::string up = m.upper ? fixed(m.upper->value, 14) : "-";
    const std::string lo = m.lower ? fixed(m.lower->value, 14) : "-";
    double flat = 0.0;
    if (m.upper) flat = std::max(flat, m.upper->flatness_residual);
    if (m.lower) flat = std::max(flat, m.lower->flatness_residual);
    std::snprintf(line, sizeof line, "%-12s %20s %20s %12.3e %10.1f\n", name.c_str(), up.c_str(),
                  lo.c_str(), flat, m.wall_ms);
    out << line;
    for (const auto* r : {&m.upper, &m.lower}) {
      if (*r && ((*r)->boundary_escape || !(*r)->converged || !(*r)->note.empty())) {
        out << "  " << to_string((*r)->side) << ": "
            << ((*r)->converged ? "" : "not converged; ")
            << ((*r)->boundary_escape ? "boundary escape; " : "") << (*r)->note << '\n';
      }
    }
  }
  if (report.singular) {
    out << "\ns_max = " << fixed(report.singular->s_max, 14)
        << "\ns_min = " << fixed(report.singular->s_min, 14) << '\n';
  }
  const auto& t = report.agreement;
  bool header = false;
  for (std::size_t i = 0; i < t.methods.size(); ++i) {
    for (std::size_t j = i + 1; j < t.methods.size(); ++j) {
      if (!t.upper[i][j] && !t.lower[i][j]) continue;
      if (!header) {
        out << "\nagreement |difference|\n";
        header = true;
      }
      out << "  " << t.methods[i] << " vs " << t.methods[j] << ":";
      if (t.upper[i][j]) out << " upper " << fixed(*t.upper[i][j], 3);
      if (t.lower[i][j]) out << " lower " << fixed(*t.lower[i][j], 3);
      out << '\n';
    }
  }
  if (report.mc) {
    const auto& mc = *report.mc;
    out << "\nmonte carlo: N = " << mc.config.dim << ", samples = " << mc.config.samples
        << ", seed = " << mc.config.seed << '\n';
    auto row = [&](const char* name, double mean, double sd, double pred, double dev) {
      std::snprintf(line, sizeof line, "  %s  mean %.8f  sd %.3e  predicted %.8f  deviation %.4f%s\n",
                    name, mean, sd, pred, dev, dev > kDeviationHighlight ? "  !! above 15%" : "");
      out << line;
    };
    row("max", mc.stats.mean_max, mc.stats.sd_max, mc.predicted_max, mc.deviation_max);
    row("min", mc.stats.mean_min, mc.stats.sd_min, mc.predicted_min, mc.deviation_min);
  }
  for (const auto& n : report.notes) out << "note: " << n << '\n';
  return out.str();
}

std::string render_text(const cauchy::CauchyPoint& pt) {
  std::ostringstream out;
  out << "lambda = " << fixed(pt.lambda.real(), 14);
  if (pt.lambda.imag() != 0.0) out << (pt.lambda.imag() < 0 ? " - " : " + ") << fixed(std::abs(pt.lambda.imag()), 14) << "i";
  out << '\n';
  render_matrix(out, "G", pt.G);
  render_matrix(out, "H", pt.H);
  out << "residual = " << fixed(pt.residual, 4) << "\niterations = " << pt.iterations
      << "\nsign = " << cauchy::to_string(pt.sign) << '\n';
  return out.str();
}

}  // namespace freeedge::cli
