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

#include <complex>

#include "freeedge/edge_result.hpp"
#include "freeedge/model.hpp"

/// The matrix Cauchy transform G(lambda) of x x* + b (x) 1, computed from the
/// self-consistency equation
///
///     b + G^{-1} + sum_i a_i (1 - sum_j a_j* G a_j)^{-1} a_i* = lambda * 1,
///
/// its companion H(lambda) = (1 - Phi*(G))^{-1}, a moment-series oracle, and
/// edge location by bisection on the real axis.
namespace freeedge::cauchy {

using linalg::Complex;
using linalg::ComplexMatrix;

enum class SignCheck {
  Positive,          // real lambda, G > 0
  Negative,          // real lambda, G < 0
  Indefinite,        // real lambda, neither
  HerglotzOk,        // complex lambda, Im G has the sign opposite to Im lambda
  HerglotzViolated,  // complex lambda, wrong branch
};

std::string_view to_string(SignCheck sign);

struct CauchyPoint {
  Complex lambda;
  ComplexMatrix G;  // d x d
  ComplexMatrix H;  // m x m
  double residual = 0.0;  // |h(G) - lambda * 1|_F
  bool converged = false;
  int iterations = 0;
  SignCheck sign = SignCheck::Indefinite;
};

/// b + Z^{-1} + Phi((1 - Phi*(Z))^{-1}) - lambda * 1 for a general complex Z.
/// Throws SingularZ or SingularResolvent.
ComplexMatrix fixed_point_residual(const model::FreeModel& model, const ComplexMatrix& z,
                                   Complex lambda);

/// Damped fixed-point iteration followed by Newton. Never throws on
/// non-convergence; inspect `converged` and `sign`. An optional warm start
/// replaces the default initial point.
CauchyPoint attempt_G(const model::FreeModel& model, Complex lambda, const SolverOptions& opts,
                      const ComplexMatrix* warm = nullptr);

/// As attempt_G, but throws NonConvergence when the iteration fails (lambda
/// too close to or inside the spectrum) and BranchViolation when a complex
/// lambda converged off the Herglotz branch.
CauchyPoint solve_G(const model::FreeModel& model, Complex lambda,
                    const SolverOptions& opts = {});

/// Partial sum (lambda - b)^{-1} sum_{k <= order} C_k of the moment expansion,
/// with C_k, D_k from the coupled recursions. Throws SeriesDiverges unless
/// |(lambda - b)^{-1}| * |x x*| < 1 for the available bound on |x x*|.
ComplexMatrix series_G(const model::FreeModel& model, Complex lambda, int order);

/// Edge as the end of the real interval on which a definite-signed feasible
/// solution of the fixed-point equation exists (G > 0 above the spectrum,
/// G < 0 below it).
EdgeResult edge_from_cauchy(const model::FreeModel& model, Side side,
                            const SolverOptions& opts = {});

}  // namespace freeedge::cauchy
