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
#include <functional>
#include <optional>

#include "freeedge/linalg.hpp"

// Minimization of lambda_max(F(x)) for a matrix-valued map F on an open
// convex-ish domain of real parameters, where the optimum is characterized by
// the flatness condition F(x) = lambda * 1 together with stationarity
// D F(x)^*[W] = 0 for a density matrix W.
//
// Lower-edge problems are handled by negation: maximizing lambda_min(h) is
// minimizing lambda_max(-h).
namespace freeedge::detail {

using linalg::ComplexMatrix;
using linalg::RealMatrix;
using linalg::RealVector;

class SpectralProblem {
 public:
  virtual ~SpectralProblem() = default;

  virtual std::size_t param_dim() const = 0;
  /// Size k of the k x k matrix F(x).
  virtual std::size_t value_dim() const = 0;

  /// F(x), or nullopt when x is outside the open domain.
  virtual std::optional<ComplexMatrix> value(const RealVector& x) const = 0;
  /// Gradient of x -> tr(W F(x)) for Hermitian W.
  virtual RealVector pullback(const RealVector& x, const ComplexMatrix& w) const = 0;

  /// Optional convex barrier, finite on the domain.
  virtual double barrier(const RealVector&) const { return 0.0; }
  virtual RealVector barrier_gradient(const RealVector& x) const {
    return RealVector::Zero(x.size());
  }

  /// Coordinates on the space where F takes values. The default is the full
  /// Hermitian vectorization; diagonal problems override with the diagonal.
  virtual std::size_t image_dim() const { return value_dim() * value_dim(); }
  virtual RealVector image_coords(const ComplexMatrix& m) const { return linalg::to_real(m); }
  virtual ComplexMatrix image_matrix(const RealVector& w) const {
    return linalg::from_real(w, value_dim());
  }

  /// Jacobian of x -> image_coords(F(x)) when cheaper than finite differences.
  virtual std::optional<RealMatrix> image_jacobian(const RealVector&) const { return std::nullopt; }

  /// Starting point for solving F(x) = lambda * 1 at large lambda.
  virtual std::optional<RealVector> far_start(double) const { return std::nullopt; }
};

struct EngineOptions {
  double mu_initial = 0.1;     // smoothing temperature, relative to scale
  double mu_min = 1e-9;        // relative to scale
  double decay = 0.2;          // geometric decrease of temperature and barrier weight
  double barrier_initial = 1e-2;
  double polish_below = 1e-2;  // attempt the flatness polish once mu/scale drops below
  int max_iter = 500;          // total Newton iterations over all levels
  double escape_norm = 1e8;    // |x| beyond which the optimum is treated as escaping
};

struct MinimizeResult {
  RealVector x;                  // best certificate found
  double value = 0.0;            // lambda_max(F(x))
  ComplexMatrix weights;         // last density matrix (softmax or multiplier)
  int iterations = 0;
  bool polished = false;
  bool escaped = false;
  bool exhausted = false;
};

/// Value of lambda_max(F(x)); nullopt outside the domain.
std::optional<double> lambda_max_at(const SpectralProblem& p, const RealVector& x);

/// Smoothed Newton descent on mu*log tr exp(F/mu) + t*barrier with a
/// geometric temperature schedule, interleaved with flatness polishing.
MinimizeResult minimize_lambda_max(const SpectralProblem& p, const RealVector& x0,
                                   const EngineOptions& opts);

struct PolishResult {
  RealVector x;
  double lambda;
  ComplexMatrix weights;
  double residual;
  int iterations;
};

/// Newton on the square system F(x) = lambda*1, DF(x)^*[W] = 0, tr W = 1.
/// Returns a point only when the system converged with W close to positive
/// semidefinite and x inside the domain.
std::optional<PolishResult> polish_flat(const SpectralProblem& p, const RealVector& x0,
                                        double lambda0, const ComplexMatrix& w0, double scale);

/// Newton on F(x) = lambda*1 from a warm start. Returns x when the residual
/// reached tol and x is in the domain.
std::optional<RealVector> solve_flat(const SpectralProblem& p, double lambda,
                                     const RealVector& x0, double tol, int max_iter = 60);

struct DescendResult {
  double lambda;  // smallest lambda with a flat feasible solution found
  RealVector x;
  int iterations;
};

/// Flat feasible solutions exist exactly for lambda >= the optimum, so the
/// optimum is approached by continuation from lambda_ok (solution x_ok)
/// towards lambda_fail (no solution). A failed step only shrinks the step, so
/// a Newton failure far from the optimum cannot bias the result.
using FlatSolver =
    std::function<std::optional<RealVector>(double lambda, const RealVector& warm)>;
DescendResult descend_flat(double lambda_fail, double lambda_ok, RealVector x_ok, double tol,
                         const FlatSolver& solver);

/// Finds a flat solution at some large lambda using far_start() and doubling.
std::optional<std::pair<double, RealVector>> flat_far_point(const SpectralProblem& p,
                                                            double lambda_guess, double tol);

/// Central finite-difference Jacobian of a vector map whose columns may be
/// evaluated one-sidedly near the domain boundary.
RealMatrix fd_jacobian(const std::function<std::optional<RealVector>(const RealVector&)>& f,
                       const RealVector& x, const RealVector& fx);

}  // namespace freeedge::detail
