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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freeedge/cauchy.hpp"
#include "freeedge/edge_result.hpp"
#include "freeedge/mc_oracle.hpp"
#include "json.hpp"

namespace freeedge::cli {

struct MethodEntry {
  Method method = Method::Variational;
  std::optional<EdgeResult> upper;
  std::optional<EdgeResult> lower;
  double wall_ms = 0.0;
  bool skipped = false;
  std::string error;  // solver failure, tagged with the method in the output
  std::string note;
};

/// Pairwise |difference| between methods, symmetric, empty where a method
/// does not provide that edge.
struct AgreementTable {
  std::vector<std::string> methods;
  std::vector<std::vector<std::optional<double>>> upper;
  std::vector<std::vector<std::optional<double>>> lower;

  double max_difference() const;
};

struct McSection {
  mc::McConfig config;
  mc::McEdgeStats stats;
  double predicted_max = 0.0;
  double predicted_min = 0.0;
  double deviation_max = 0.0;  // |mean - predicted| / max(1, |predicted|)
  double deviation_min = 0.0;
  double wall_ms = 0.0;
};

/// Relative deviation above which Monte Carlo output is flagged.
inline constexpr double kDeviationHighlight = 0.15;

struct SingularValues {
  double s_max = 0.0;
  double s_min = 0.0;
};

struct RunReport {
  std::string model_digest;
  std::vector<MethodEntry> methods;
  AgreementTable agreement;
  std::optional<McSection> mc;
  std::optional<SingularValues> singular;
  std::vector<std::string> notes;
};

AgreementTable agreement_table(const std::vector<MethodEntry>& methods);

nlohmann::json to_json(const EdgeResult& r);
nlohmann::json to_json(const RunReport& report);
nlohmann::json to_json(const cauchy::CauchyPoint& pt);

std::string render_text(const RunReport& report);
/// Pretty-printed JSON followed by a newline.
std::string report_json_text(const RunReport& report);
std::string render_text(const cauchy::CauchyPoint& pt);

/// Shortest round-trip decimal form, independent of the locale.
std::string format_number(double x);

}  // namespace freeedge::cli
