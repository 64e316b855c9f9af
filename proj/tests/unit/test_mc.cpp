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

#include <cmath>

#include "doctest.h"
#include "freeedge/mc_oracle.hpp"
#include "random_models.hpp"

using namespace freeedge;
using namespace freeedge::mc;
using linalg::ComplexMatrix;
using linalg::HermitianMatrix;
using linalg::RealVector;

namespace {

model::FreeModel scalar_model() {
  return model::FreeModel(1, 1, {ComplexMatrix::Ones(1, 1)}, HermitianMatrix::zero(1));
}

}  // namespace

TEST_SUITE("mc") {

TEST_CASE("config validation") {
  McConfig cfg;
  cfg.dim = 1;
  CHECK_THROWS_AS(cfg.check(), Error);
  cfg.dim = 2;
  cfg.samples = 0;
  CHECK_THROWS_AS(cfg.check(), Error);
  cfg.samples = 1;
  CHECK_NOTHROW(cfg.check());
}

TEST_CASE("GUE normalization") {
  auto rng = sample_stream(7, 0);
  const std::size_t n = 400;
  const ComplexMatrix g = sample_gue(n, rng);
  CHECK((g - g.adjoint()).norm() == 0.0);
  const ComplexMatrix g2 = g * g;
  const double m2 = g2.trace().real() / n;
  const double m4 = (g2 * g2).trace().real() / n;
  CHECK(std::abs(m2 - 1.0) <= 0.05);
  CHECK(std::abs(m4 - 2.0) <= 0.15);
  CHECK(std::abs(g.trace().real() / n) <= 0.05);
}

TEST_CASE("x = 0 reproduces b exactly") {
  const model::FreeModel fm(2, 1, {}, HermitianMatrix::diagonal(RealVector{{1.0, 2.0}}));
  McConfig cfg;
  cfg.dim = 5;
  cfg.samples = 3;
  const McEdgeStats s = mc_edges(fm, cfg);
  CHECK(s.mean_max == 2.0);
  CHECK(s.mean_min == 1.0);
  CHECK(s.sd_max == 0.0);
  CHECK(s.sd_min == 0.0);
  CHECK(s.per_sample.size() == 3);
  auto rng = sample_stream(0, 0);
  const HermitianMatrix y = sample_realization(fm, 5, rng);
  CHECK(y.dim() == 10);
  const RealVector ev = linalg::eigenvalues(y);
  CHECK(ev.head(5).isApproxToConstant(1.0, 1e-14));
  CHECK(ev.tail(5).isApproxToConstant(2.0, 1e-14));
}

TEST_CASE("realizations scale quadratically with the coefficients") {
  freeedge::testing::Rng rng(61);
  const auto raw = freeedge::testing::random_model(rng);
  const auto fm = raw.with_shift(HermitianMatrix::zero(raw.d()));
  auto s1 = sample_stream(3, 1);
  auto s2 = sample_stream(3, 1);
  const RealVector a = linalg::eigenvalues(sample_realization(fm, 20, s1));
  const RealVector b = linalg::eigenvalues(sample_realization(fm.scaled(2.0), 20, s2));
  CHECK((b - 4.0 * a).norm() <= 1e-10 * (1.0 + a.norm()));
}

TEST_CASE("deterministic for a fixed seed, parallel or not") {
  freeedge::testing::Rng rng(62);
  const auto fm = freeedge::testing::random_model(rng);
  McConfig cfg;
  cfg.dim = 30;
  cfg.samples = 6;
  cfg.seed = 99;
  const McEdgeStats par = mc_edges(fm, cfg);
  cfg.parallel = false;
  const McEdgeStats seq = mc_edges(fm, cfg);
  CHECK(par.per_sample == seq.per_sample);
  CHECK(par.mean_max == seq.mean_max);
  CHECK(par.sd_min == seq.sd_min);
  for (const auto& [mx, mn] : par.per_sample) CHECK(mn <= mx);
  cfg.seed = 100;
  CHECK(mc_edges(fm, cfg).per_sample != seq.per_sample);
}

TEST_CASE("edge bias shrinks with dimension") {
  const auto fm = scalar_model();
  McConfig cfg;
  cfg.samples = 4;
  cfg.seed = 5;
  double prev_err = 0.0;
  double prev_sd = 0.0;
  for (std::size_t dim : {100, 200, 400}) {
    cfg.dim = dim;
    const McEdgeStats s = mc_edges(fm, cfg);
    const double err = std::abs(s.mean_max - 4.0);
    if (dim > 100) CHECK(err <= prev_err + 2.0 * std::max(s.sd_max, prev_sd));
    CHECK(err <= 0.4);
    prev_err = err;
    prev_sd = s.sd_max;
  }
}

}  // TEST_SUITE
