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

#include "freeedge/cli/model_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace freeedge::cli {
namespace {

using linalg::Complex;
using linalg::ComplexMatrix;
using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw InputError("field '" + field + "': " + what);
}

const json& require(const json& obj, const char* key, const std::string& prefix = "") {
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError("missing required field '" + prefix + key + "'");
  return *it;
}

double real_at(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(field, "non-finite value");
  return x;
}

std::size_t count_at(const json& v, const std::string& field) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) fail(field, "expected an integer");
  const auto x = v.get<long long>();
  if (x < 0) fail(field, "must be nonnegative");
  return static_cast<std::size_t>(x);
}

Complex complex_at(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2) fail(field, "expected a [re, im] pair");
  return {real_at(v[0], field + "[0]"), real_at(v[1], field + "[1]")};
}

ComplexMatrix complex_matrix_at(const json& v, std::size_t rows, std::size_t cols,
                                const std::string& field) {
  if (!v.is_array() || v.size() != rows) {
    fail(field, "expected " + std::to_string(rows) + " rows");
  }
  ComplexMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rf = field + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || v[i].size() != cols) {
      fail(rf, "expected " + std::to_string(cols) + " entries");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      out(i, j) = complex_at(v[i][j], rf + "[" + std::to_string(j) + "]");
    }
  }
  return out;
}

linalg::RealMatrix real_matrix_at(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty()) fail(field, "expected a nonempty list of rows");
  const std::size_t rows = v.size();
  if (!v[0].is_array() || v[0].empty()) fail(field + "[0]", "expected a nonempty row");
  const std::size_t cols = v[0].size();
  linalg::RealMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rf = field + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || v[i].size() != cols) {
      fail(rf, "expected " + std::to_string(cols) + " entries");
    }
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = real_at(v[i][j], rf + "[" + std::to_string(j) + "]");
  }
  return out;
}

LoadedModel from_profile_doc(const json& doc) {
  const json& vp = doc.at("variance_profile");
  if (!vp.is_object()) fail("variance_profile", "expected an object");
  model::VarianceProfile p;
  p.sigma2 = real_matrix_at(require(vp, "sigma2", "variance_profile."), "variance_profile.sigma2");
  const json& bd = require(vp, "bdiag", "variance_profile.");
  if (!bd.is_array() || bd.size() != static_cast<std::size_t>(p.sigma2.rows())) {
    fail("variance_profile.bdiag", "expected " + std::to_string(p.sigma2.rows()) + " entries");
  }
  p.bdiag.resize(p.sigma2.rows());
  for (std::size_t i = 0; i < bd.size(); ++i) {
    p.bdiag(i) = real_at(bd[i], "variance_profile.bdiag[" + std::to_string(i) + "]");
  }
  if (doc.contains("d") && count_at(doc["d"], "d") != p.d()) fail("d", "disagrees with sigma2");
  if (doc.contains("m") && count_at(doc["m"], "m") != p.m()) fail("m", "disagrees with sigma2");
  try {
    p.check();
    return LoadedModel{model::from_variance_profile(p), p, normalized_json(p)};
  } catch (const Error& e) {
    throw InputError(std::string("variance_profile: ") + e.what());
  }
}

LoadedModel from_coeff_doc(const json& doc) {
  const std::size_t d = count_at(require(doc, "d"), "d");
  const std::size_t m = count_at(require(doc, "m"), "m");
  if (d == 0) fail("d", "must be positive");
  if (m == 0) fail("m", "must be positive");
  const json& cs = require(doc, "coeffs");
  if (!cs.is_array()) fail("coeffs", "expected a list of matrices");
  if (doc.contains("n") && count_at(doc["n"], "n") != cs.size()) {
    fail("n", "disagrees with the number of coefficients (" + std::to_string(cs.size()) + ")");
  }
  model::ModelSpec spec;
  spec.d = d;
  spec.m = m;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    spec.coeffs.push_back(complex_matrix_at(cs[i], d, m, "coeffs[" + std::to_string(i) + "]"));
  }
  spec.shift = complex_matrix_at(require(doc, "shift"), d, d, "shift");
  try {
    model::FreeModel fm = model::FreeModel::from_spec(spec);
    json norm = normalized_json(fm);
    return LoadedModel{std::move(fm), std::nullopt, std::move(norm)};
  } catch (const Error& e) {
    throw InputError(std::string("model: ") + e.what());
  }
}

}  // namespace

json complex_matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json normalized_json(const model::FreeModel& model) {
  json doc;
  doc["d"] = model.d();
  doc["m"] = model.m();
  doc["n"] = model.n();
  doc["coeffs"] = json::array();
  for (const auto& a : model.coeffs()) doc["coeffs"].push_back(complex_matrix_json(a));
  doc["shift"] = complex_matrix_json(model.shift().matrix());
  return doc;
}

json normalized_json(const model::VarianceProfile& profile) {
  json sigma = json::array();
  for (Eigen::Index i = 0; i < profile.sigma2.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < profile.sigma2.cols(); ++j) row.push_back(profile.sigma2(i, j));
    sigma.push_back(std::move(row));
  }
  json b = json::array();
  for (Eigen::Index i = 0; i < profile.bdiag.size(); ++i) b.push_back(profile.bdiag(i));
  json doc;
  doc["d"] = profile.d();
  doc["m"] = profile.m();
  doc["variance_profile"] = {{"sigma2", std::move(sigma)}, {"bdiag", std::move(b)}};
  return doc;
}

std::string model_digest(const json& normalized) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : normalized.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

LoadedModel parse_model(const json& doc) {
  if (!doc.is_object()) throw InputError("model file must hold a JSON object");
  const bool has_coeffs = doc.contains("coeffs");
  const bool has_profile = doc.contains("variance_profile");
  if (has_coeffs == has_profile) {
    throw InputError("exactly one of 'coeffs' and 'variance_profile' must be present");
  }
  return has_profile ? from_profile_doc(doc) : from_coeff_doc(doc);
}

LoadedModel parse_model_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return parse_model(doc);
}

LoadedModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_model_text(text.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace freeedge::cli
