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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "freeedge/model.hpp"
#include "json.hpp"

// Model files: a JSON document holding either
//   {"d", "m", "n", "coeffs": [d x m matrices of [re, im]], "shift": d x d}
// or
//   {"variance_profile": {"sigma2": d x m reals, "bdiag": d reals}}.
namespace freeedge::cli {

/// Malformed or invalid model input; the message names the offending field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedModel {
  model::FreeModel model;
  std::optional<model::VarianceProfile> profile;  // when given as a profile
  nlohmann::json normalized;                      // canonical form
};

LoadedModel parse_model(const nlohmann::json& doc);
LoadedModel parse_model_text(const std::string& text);
LoadedModel load_model_file(const std::string& path);

/// Canonical documents for a model or a profile.
nlohmann::json normalized_json(const model::FreeModel& model);
nlohmann::json normalized_json(const model::VarianceProfile& profile);

/// FNV-1a 64 of the compact canonical dump, as 16 hex digits.
std::string model_digest(const nlohmann::json& normalized);

nlohmann::json complex_matrix_json(const linalg::ComplexMatrix& m);

}  // namespace freeedge::cli
