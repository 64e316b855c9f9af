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

#include "freeedge/mc_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include <Eigen/Eigenvalues>

#include "freeedge/kernels.hpp"

namespace freeedge::mc {
namespace {

using linalg::Complex;
using linalg::ComplexMatrix;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::size_t worker_count(const McConfig& cfg) {
  if (!cfg.parallel) return 1;
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FREE_EDGE_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) n = std::min<std::size_t>(n, static_cast<std::size_t>(cap));
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return std::min(n, cfg.samples);
}

std::pair<double, double> sample_extremes(const model::FreeModel& model, const McConfig& cfg,
                                          std::size_t index) {
  if (model.is_trivial()) {
    const auto ext = linalg::eig_extremes(model.shift());
    return {ext.max, ext.min};
  }
  auto rng = sample_stream(cfg.seed, index);
  const linalg::HermitianMatrix y = sample_realization(model, cfg.dim, rng);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(y.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "eigensolver failed on a Monte Carlo sample");
  }
  const auto& ev = es.eigenvalues();
  return {ev(ev.size() - 1), ev(0)};
}

}  // namespace

void McConfig::check() const {
  if (dim < 2) throw Error(ErrorCode::InvalidArgument, "Monte Carlo dimension must be at least 2");
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "at least one sample is required");
}

std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(index + 1));
  std::seed_seq seq{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32)};
  return std::mt19937_64(seq);
}

ComplexMatrix sample_gue(std::size_t dim, std::mt19937_64& rng) {
  const auto n = static_cast<Eigen::Index>(dim);
  const double sd_diag = 1.0 / std::sqrt(static_cast<double>(dim));
  const double sd_off = sd_diag / std::sqrt(2.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < c; ++r) {
      const double re = sd_off * normal(rng);
      const double im = sd_off * normal(rng);
      g(r, c) = Complex(re, im);
      g(c, r) = Complex(re, -im);
    }
    g(c, c) = sd_diag * normal(rng);
  }
  return g;
}

linalg::HermitianMatrix sample_realization(const model::FreeModel& model, std::size_t dim,
                                           std::mt19937_64& rng) {
  const auto n = static_cast<Eigen::Index>(dim);
  const auto d = static_cast<Eigen::Index>(model.d());
  const auto m = static_cast<Eigen::Index>(model.m());
  ComplexMatrix x = ComplexMatrix::Zero(d * n, m * n);
  for (const ComplexMatrix& a : model.coeffs()) {
    const ComplexMatrix g = sample_gue(dim, rng);
    // Block (p, q) of a (x) G is a(p, q) G; assemble column by column.
    for (Eigen::Index q = 0; q < m; ++q) {
      for (Eigen::Index c = 0; c < n; ++c) {
        Complex* col = x.col(q * n + c).data();
        const Complex* gcol = g.col(c).data();
        for (Eigen::Index p = 0; p < d; ++p) {
          const Complex alpha = a(p, q);
          if (alpha == Complex(0.0)) continue;
          kernels::caxpy(dim, alpha, gcol, col + p * n);
        }
      }
    }
  }
  ComplexMatrix y = ComplexMatrix::Zero(d * n, d * n);
  y.selfadjointView<Eigen::Lower>().rankUpdate(x);
  const ComplexMatrix& b = model.shift().matrix();
  for (Eigen::Index p = 0; p < d; ++p) {
    for (Eigen::Index q = 0; q <= p; ++q) {
      if (b(p, q) == Complex(0.0)) continue;
      for (Eigen::Index r = 0; r < n; ++r) y(p * n + r, q * n + r) += b(p, q);
    }
  }
  for (Eigen::Index c = 1; c < d * n; ++c) {
    for (Eigen::Index r = 0; r < c; ++r) y(r, c) = std::conj(y(c, r));
  }
  return linalg::HermitianMatrix::symmetrized(y);
}

McEdgeStats mc_edges(const model::FreeModel& model, const McConfig& cfg) {
  cfg.check();
  McEdgeStats stats;
  stats.per_sample.assign(cfg.samples, {0.0, 0.0});

  const std::size_t workers = worker_count(cfg);
  if (workers <= 1) {
    for (std::size_t k = 0; k < cfg.samples; ++k) stats.per_sample[k] = sample_extremes(model, cfg, k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = next++; k < cfg.samples; k = next++) {
            stats.per_sample[k] = sample_extremes(model, cfg, k);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Aggregate in index order so the sums do not depend on scheduling.
  const double s = static_cast<double>(cfg.samples);
  for (const auto& [hi, lo] : stats.per_sample) {
    stats.mean_max += hi;
    stats.mean_min += lo;
  }
  stats.mean_max /= s;
  stats.mean_min /= s;
  if (cfg.samples > 1) {
    double vmax = 0.0;
    double vmin = 0.0;
    for (const auto& [hi, lo] : stats.per_sample) {
      vmax += (hi - stats.mean_max) * (hi - stats.mean_max);
      vmin += (lo - stats.mean_min) * (lo - stats.mean_min);
    }
    stats.sd_max = std::sqrt(vmax / (s - 1.0));
    stats.sd_min = std::sqrt(vmin / (s - 1.0));
  }
  return stats;
}

}  // namespace freeedge::mc
