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

#include "freeedge/edge_result.hpp"
#include "freeedge/model.hpp"

// Evaluation of h(z) = b + z^{-1} + Phi((1 - Phi*(z))^{-1}) shared by the
// variational and Cauchy-transform solvers.
namespace freeedge::detail {

using linalg::ComplexMatrix;

/// Inverse through the SVD, or nullopt when sigma_min is below the
/// invertibility threshold.
std::optional<ComplexMatrix> try_inverse(const ComplexMatrix& m);

struct ObjectiveParts {
  ComplexMatrix h;
  ComplexMatrix z_inv;
  ComplexMatrix resolvent;  // (1 - Phi*(z))^{-1}, m x m
};

/// nullopt when z or 1 - Phi*(z) is numerically singular. General complex z.
std::optional<ObjectiveParts> evaluate_objective(const model::FreeModel& model,
                                                 const ComplexMatrix& z);

/// Closed-form edge of b (x) 1 when every coefficient vanishes. The optimum
/// escapes to infinity, so the certificate is +-t * 1 with t large.
EdgeResult trivial_edge(const model::FreeModel& model, Side side, Method method);

/// lambda_max (Upper) or lambda_min (Lower) of h(z) and |h(z) - value*1|_F.
std::pair<double, double> certificate_of(const model::FreeModel& model, const ComplexMatrix& z,
                                         Side side);

}  // namespace freeedge::detail
