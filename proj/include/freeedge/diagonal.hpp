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

#include "freeedge/edge_result.hpp"
#include "freeedge/model.hpp"

/// Variance-profile specialization: restricted to diagonal z = diag(v), both
/// variational formulas reduce to vector problems over the objective
///
///     o_i(v) = b_i + 1/v_i + sum_j sigma2_ij / (1 - sum_k sigma2_kj v_k).
namespace freeedge::diagonal {

using linalg::RealVector;

struct DiagonalIterate {
  RealVector v;
  RealVector objective;  // empty unless feasible
  bool feasible = false;
};

/// The variance profile of a diagonal-compatible model: sigma2_ij =
/// sum_l |a_l(i, j)|^2 and bdiag = diag(b). Throws InvalidArgument otherwise.
model::VarianceProfile profile_of(const model::FreeModel& model);

/// Entrywise o(v). Throws Infeasible naming the constraint and index.
RealVector diag_objective(const model::VarianceProfile& profile, const RealVector& v, Side side);

/// Non-throwing variant that records feasibility.
DiagonalIterate diag_iterate(const model::VarianceProfile& profile, const RealVector& v,
                             Side side);

/// Certificates are diag(v); flatness_residual is max(o) - min(o).
EdgeResult diag_upper_edge(const model::VarianceProfile& profile, const SolverOptions& opts = {});
EdgeResult diag_lower_edge(const model::VarianceProfile& profile, const SolverOptions& opts = {});

}  // namespace freeedge::diagonal
