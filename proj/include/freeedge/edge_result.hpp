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

#include <cstddef>
#include <string>
#include <string_view>

#include "freeedge/linalg.hpp"

namespace freeedge {

enum class Method { Variational, Cauchy, Dilation, Diagonal };
enum class Side { Upper, Lower };

std::string_view to_string(Method method);
std::string_view to_string(Side side);

struct SolverOptions {
  double tol = 1e-8;       // spectral edge value
  double flat_tol = 1e-6;  // |h(z) - value * 1|_F at attained optima
  int max_iter = 500;      // outer optimization iterations
  double fp_tol = 1e-11;   // fixed-point residual, relative to max(1, |lambda|)
  int fp_max_iter = 2000;  // damped fixed-point iterations per point
};

/// A computed spectral edge with the feasible point that certifies it.
///
/// For Side::Upper the certificate z satisfies z > 0 and Phi*(z) < 1 and
/// certificate_value = lambda_max(h(z)) is an upper bound on the edge; for
/// Side::Lower z < 0 and certificate_value = lambda_min(h(z)) is a lower
/// bound. The dilation method stores its certificate on the dilated space.
struct EdgeResult {
  double value = 0.0;
  linalg::HermitianMatrix certificate;
  double certificate_value = 0.0;
  double flatness_residual = 0.0;
  int iterations = 0;
  Method method = Method::Variational;
  Side side = Side::Upper;
  /// False when the iteration budget ran out; value is then the best bound.
  bool converged = true;
  /// The certificate drifted towards the boundary of the cone or to infinity,
  /// so the optimum is approached but not attained.
  bool boundary_escape = false;
  std::string note;
};

}  // namespace freeedge
