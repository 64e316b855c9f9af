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

#include <vector>

#include "freeedge/edge_result.hpp"
#include "freeedge/model.hpp"

/// Variational formulas for the extreme eigenvalues of x x* + b (x) 1:
///
///     lambda_max = inf { lambda_max(h(z)) : z > 0, Phi*(z) < 1 },
///     lambda_min = sup { lambda_min(h(z)) : z < 0 },
///
/// with h(z) = b + z^{-1} + Phi((1 - Phi*(z))^{-1}), together with the
/// self-adjoint formula for a_0 (x) 1 + sum a_i (x) s_i and a cross-check that
/// runs it on a self-adjoint dilation of x.
namespace freeedge::edges {

using linalg::HermitianMatrix;

/// h(z). Throws SingularZ or SingularResolvent.
HermitianMatrix objective_h(const model::FreeModel& model, const HermitianMatrix& z);

EdgeResult upper_edge(const model::FreeModel& model, const SolverOptions& opts = {});
EdgeResult lower_edge(const model::FreeModel& model, const SolverOptions& opts = {});

/// inf over z > 0 of lambda_max(a0 + z^{-1} + sum_i a_i z a_i).
EdgeResult lehner_selfadjoint_max(const HermitianMatrix& a0, const std::vector<HermitianMatrix>& a,
                                  const SolverOptions& opts = {});

/// Upper edge through the (2d + m)-dimensional self-adjoint dilation. The
/// certificate lives on the dilated space; value and certificate_value are
/// translated back to the scale of x x* + b.
EdgeResult dilated_cross_check(const model::FreeModel& model, const SolverOptions& opts = {});

/// lambda_max(h(z)) for Side::Upper, lambda_min(h(z)) for Side::Lower. Throws
/// Infeasible naming the violated constraint.
double eval_certificate(const model::FreeModel& model, const HermitianMatrix& z, Side side);

}  // namespace freeedge::edges
