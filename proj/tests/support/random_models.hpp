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

// Random instances shared by the unit and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "freeedge/linalg.hpp"
#include "freeedge/model.hpp"

namespace freeedge::testing {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::HermitianMatrix;
using linalg::RealMatrix;
using linalg::RealVector;

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t uniform_count(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Entries U[-1,1] + i U[-1,1].
inline ComplexMatrix random_complex(Rng& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(uniform(rng), uniform(rng));
  }
  return m;
}

inline HermitianMatrix random_hermitian(Rng& rng, std::size_t k) {
  const ComplexMatrix a = random_complex(rng, k, k);
  return HermitianMatrix::symmetrized(0.5 * (a + a.adjoint()));
}

/// A A* + eps with A random, so strictly positive definite.
inline HermitianMatrix random_pd(Rng& rng, std::size_t k, double eps = 0.1) {
  const ComplexMatrix a = random_complex(rng, k, k);
  ComplexMatrix p = a * a.adjoint();
  p.diagonal().array() += eps;
  return HermitianMatrix::symmetrized(p);
}

/// d, m <= max_dim, 1 <= n <= max_n, entries U[-1,1] + i U[-1,1], random Hermitian b.
inline model::FreeModel random_model(Rng& rng, std::size_t max_dim = 4, std::size_t max_n = 5) {
  const std::size_t d = uniform_count(rng, 1, max_dim);
  const std::size_t m = uniform_count(rng, 1, max_dim);
  const std::size_t n = uniform_count(rng, 1, max_n);
  std::vector<ComplexMatrix> coeffs;
  for (std::size_t i = 0; i < n; ++i) coeffs.push_back(random_complex(rng, d, m));
  return model::FreeModel(d, m, std::move(coeffs), random_hermitian(rng, d));
}

/// The fixed pool of 25 models used by the cross-method suites.
inline std::vector<model::FreeModel> suite_models(std::uint64_t seed = 20241014, std::size_t count = 25) {
  Rng rng(seed);
  std::vector<model::FreeModel> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_model(rng));
  return out;
}

/// sigma2 in [0, max_var], bdiag in [-1, 1], d, m <= max_dim.
inline model::VarianceProfile random_profile(Rng& rng, std::size_t max_dim = 6,
                                             double max_var = 2.0) {
  const std::size_t d = uniform_count(rng, 1, max_dim);
  const std::size_t m = uniform_count(rng, 1, max_dim);
  model::VarianceProfile p;
  p.sigma2.resize(d, m);
  for (Eigen::Index i = 0; i < p.sigma2.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.sigma2.cols(); ++j) p.sigma2(i, j) = uniform(rng, 0.0, max_var);
  }
  p.bdiag.resize(d);
  for (Eigen::Index i = 0; i < p.bdiag.size(); ++i) p.bdiag(i) = uniform(rng);
  return p;
}

/// z > 0 with Phi*(z) < 1: a random positive matrix scaled into the cone.
inline HermitianMatrix random_upper_feasible(const model::FreeModel& fm, Rng& rng) {
  const HermitianMatrix w = random_pd(rng, fm.d(), 0.05);
  const double top = linalg::eig_extremes(model::phi_star(fm, w)).max;
  const double t = uniform(rng, 0.02, 0.98) / std::max(top, 1e-300);
  return w.scaled(t);
}

/// z < 0 of random scale.
inline HermitianMatrix random_lower_feasible(const model::FreeModel& fm, Rng& rng) {
  const HermitianMatrix w = random_pd(rng, fm.d(), 0.05);
  return w.scaled(-std::exp(uniform(rng, -4.0, 3.0)) / std::max(1.0, w.norm()));
}

}  // namespace freeedge::testing
