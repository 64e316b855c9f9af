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

#include "detail/objective.hpp"

#include <algorithm>

#include <Eigen/SVD>

namespace freeedge::detail {

using linalg::Complex;
using linalg::HermitianMatrix;

std::optional<ComplexMatrix> try_inverse(const ComplexMatrix& m) {
  if (!m.allFinite()) return std::nullopt;
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (!(s.minCoeff() > linalg::kInvertibilityFactor * std::max(1.0, m.norm()))) {
    return std::nullopt;
  }
  return ComplexMatrix(svd.matrixV() * s.cwiseInverse().cast<Complex>().asDiagonal() *
                       svd.matrixU().adjoint());
}

std::optional<ObjectiveParts> evaluate_objective(const model::FreeModel& model,
                                                 const ComplexMatrix& z) {
  auto z_inv = try_inverse(z);
  if (!z_inv) return std::nullopt;
  const auto m = static_cast<Eigen::Index>(model.m());
  const ComplexMatrix inner =
      ComplexMatrix::Identity(m, m) - model::apply_phi_star(model, z);
  auto resolvent = try_inverse(inner);
  if (!resolvent) return std::nullopt;
  ObjectiveParts parts;
  parts.h = model.shift().matrix() + *z_inv + model::apply_phi(model, *resolvent);
  parts.z_inv = std::move(*z_inv);
  parts.resolvent = std::move(*resolvent);
  return parts;
}

EdgeResult trivial_edge(const model::FreeModel& model, Side side, Method method) {
  const HermitianMatrix& b = model.shift();
  const auto ext = linalg::eig_extremes(b);
  const double t = 1e12 * std::max(1.0, b.norm());
  EdgeResult r;
  r.side = side;
  r.method = method;
  r.value = side == Side::Upper ? ext.max : ext.min;
  const double sign = side == Side::Upper ? 1.0 : -1.0;
  r.certificate = HermitianMatrix::identity(model.d()).scaled(sign * t);
  const auto [cv, flat] = certificate_of(model, r.certificate.matrix(), side);
  r.certificate_value = cv;
  r.flatness_residual = flat;
  r.boundary_escape = true;
  r.note = "x = 0: edge of b, optimum escapes to infinity";
  return r;
}

std::pair<double, double> certificate_of(const model::FreeModel& model, const ComplexMatrix& z,
                                         Side side) {
  const auto parts = evaluate_objective(model, z);
  if (!parts) throw Error(ErrorCode::SingularZ, "certificate is singular");
  const HermitianMatrix h = HermitianMatrix::symmetrized(parts->h);
  const auto ext = linalg::eig_extremes(h);
  const double value = side == Side::Upper ? ext.max : ext.min;
  const double flat = h.shifted(-value).norm();
  return {value, flat};
}

}  // namespace freeedge::detail
