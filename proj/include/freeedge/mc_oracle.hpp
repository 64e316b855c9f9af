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
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "freeedge/model.hpp"

/// Random-matrix comparator: each s_i is replaced by an independent GUE(N)
/// matrix normalized to unit second moment, and the extreme eigenvalues of
/// X X* + b (x) I_N are averaged over samples.
namespace freeedge::mc {

struct McConfig {
  std::size_t dim = 200;  // N
  std::size_t samples = 10;
  std::uint64_t seed = 0;
  bool parallel = true;

  /// Throws InvalidArgument unless dim >= 2 and samples >= 1.
  void check() const;
};

struct McEdgeStats {
  double mean_max = 0.0;
  double mean_min = 0.0;
  double sd_max = 0.0;
  double sd_min = 0.0;
  std::vector<std::pair<double, double>> per_sample;  // (lambda_max, lambda_min)
};

/// Independent stream for sample `index` derived from `seed` by counter.
std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index);

/// N x N Hermitian Gaussian matrix, E|g_ij|^2 = 1/N, real diagonal of variance 1/N.
linalg::ComplexMatrix sample_gue(std::size_t dim, std::mt19937_64& rng);

/// X_N X_N* + b (x) I_N with X_N = sum_i a_i (x) G_i, of size d*dim.
linalg::HermitianMatrix sample_realization(const model::FreeModel& model, std::size_t dim,
                                           std::mt19937_64& rng);

/// Results depend only on the seed and configuration, never on scheduling.
/// The environment variable FREE_EDGE_THREADS caps the number of workers.
McEdgeStats mc_edges(const model::FreeModel& model, const McConfig& cfg);

}  // namespace freeedge::mc
