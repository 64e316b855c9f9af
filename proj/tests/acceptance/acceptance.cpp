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

// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "freeedge/cauchy.hpp"
#include "freeedge/diagonal.hpp"
#include "freeedge/edges.hpp"
#include "freeedge/linalg.hpp"
#include "freeedge/mc_oracle.hpp"
#include "random_models.hpp"

using namespace freeedge;
using freeedge::testing::Rng;
using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::HermitianMatrix;
using linalg::RealMatrix;
using linalg::RealVector;

namespace {

constexpr std::uint64_t kSuiteSeed = 20241014;
constexpr std::uint64_t kMcSeed = 1729;

struct Verdict {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double golden_min(const std::function<double(double)>& f, double lo, double hi) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  for (int it = 0; it < 300 && b - a > 1e-14 * (1.0 + std::abs(a)); ++it) {
    const double c = b - r * (b - a);
    const double d = a + r * (b - a);
    if (f(c) < f(d)) {
      b = d;
    } else {
      a = c;
    }
  }
  return f(0.5 * (a + b));
}

model::FreeModel scalar_model() {
  return model::FreeModel(1, 1, {ComplexMatrix::Ones(1, 1)}, HermitianMatrix::zero(1));
}

model::VarianceProfile flat_profile(int d, int m) {
  return {RealMatrix::Constant(d, m, 1.0 / m), RealVector::Zero(d)};
}

// Results on the random suite, shared by several criteria.
struct SuiteResult {
  model::FreeModel model;
  EdgeResult upper;
  EdgeResult lower;
};

std::vector<SuiteResult> g_suite;

Verdict criterion1() {
  const auto t0 = Clock::now();
  const auto fm = scalar_model();
  const model::VarianceProfile prof{RealMatrix::Ones(1, 1), RealVector::Zero(1)};
  const double ups[] = {edges::upper_edge(fm).value, cauchy::edge_from_cauchy(fm, Side::Upper).value,
                        edges::dilated_cross_check(fm).value, diagonal::diag_upper_edge(prof).value};
  const double los[] = {edges::lower_edge(fm).value, cauchy::edge_from_cauchy(fm, Side::Lower).value,
                        diagonal::diag_lower_edge(prof).value};
  const double elapsed = seconds_since(t0);
  double eu = 0.0;
  double el = 0.0;
  for (double u : ups) eu = std::max(eu, std::abs(u - 4.0));
  for (double l : los) el = std::max(el, std::abs(l));
  // The dilation reports the upper edge only: its lower value is not defined.
  Verdict v;
  v.pass = eu <= 1e-6 && el <= 1e-6 && elapsed < 1.0;
  v.detail = fmt("max |upper-4| %.2e, max |lower| %.2e", eu, el) + fmt(", %.3f s", elapsed);
  return v;
}

Verdict criterion2() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  double worst_grid = 0.0;
  for (int d = 1; d <= 4; ++d) {
    for (int k : {4, 2}) {
      const int m = k * d;
      const double ratio = static_cast<double>(d) / m;
      const double up_exact = std::pow(1.0 + std::sqrt(ratio), 2);
      const double lo_exact = std::pow(1.0 - std::sqrt(ratio), 2);
      const auto f = [ratio](double t) { return 1.0 / t + 1.0 / (1.0 - ratio * t); };
      const double grid_up = golden_min(f, 1e-9, 1.0 / ratio - 1e-9);
      const double grid_lo = -golden_min([&](double t) { return -f(-t); }, 1e-6, 1e6);
      worst_grid = std::max({worst_grid, std::abs(grid_up - up_exact), std::abs(grid_lo - lo_exact)});
      const auto p = flat_profile(d, m);
      const auto fm = model::from_variance_profile(p);
      worst = std::max({worst, std::abs(edges::upper_edge(fm).value - up_exact),
                        std::abs(edges::lower_edge(fm).value - lo_exact),
                        std::abs(diagonal::diag_upper_edge(p).value - up_exact),
                        std::abs(diagonal::diag_lower_edge(p).value - lo_exact)});
    }
  }
  const double elapsed = seconds_since(t0);
  Verdict v;
  v.pass = worst <= 1e-6 && worst_grid <= 1e-6 && elapsed < 5.0;
  v.detail = fmt("8 profiles, max error %.2e (grid oracle %.2e)", worst, worst_grid) +
             fmt(", %.3f s", elapsed);
  return v;
}

Verdict criterion3() {
  const auto t0 = Clock::now();
  double du = 0.0;
  double dl = 0.0;
  int failures = 0;
  for (const auto& fm : testing::suite_models(kSuiteSeed, 25)) {
    try {
      const EdgeResult up = edges::upper_edge(fm);
      const EdgeResult lo = edges::lower_edge(fm);
      const double cu = cauchy::edge_from_cauchy(fm, Side::Upper).value;
      const double cl = cauchy::edge_from_cauchy(fm, Side::Lower).value;
      const double di = edges::dilated_cross_check(fm).value;
      du = std::max({du, std::abs(up.value - cu), std::abs(up.value - di), std::abs(cu - di)});
      dl = std::max(dl, std::abs(lo.value - cl));
      g_suite.push_back({fm, up, lo});
    } catch (const Error& e) {
      ++failures;
      std::printf("  suite model failed: %s\n", e.what());
    }
  }
  const double elapsed = seconds_since(t0);
  Verdict v;
  v.pass = failures == 0 && du <= 1e-5 && dl <= 1e-5 && elapsed < 60.0;
  v.detail = fmt("25 models, max pairwise diff upper %.2e, lower %.2e", du, dl) +
             fmt(", %.0f failures, %.1f s", failures, elapsed);
  return v;
}

// Residual of the fixed-point equation, computed directly from the definition.
double equation_residual(const model::FreeModel& fm, const ComplexMatrix& g, Complex lambda) {
  const auto d = static_cast<Eigen::Index>(fm.d());
  const auto m = static_cast<Eigen::Index>(fm.m());
  const ComplexMatrix inner = (ComplexMatrix::Identity(m, m) - model::apply_phi_star(fm, g)).inverse();
  const ComplexMatrix lhs = fm.shift().matrix() + g.inverse() + model::apply_phi(fm, inner);
  return (lhs - lambda * ComplexMatrix::Identity(d, d)).norm();
}

Verdict criterion4() {
  Rng rng(kSuiteSeed + 4);
  double worst_res = 0.0;
  double worst_h = 0.0;
  int points = 0;
  int nonconverged = 0;
  for (const auto& s : g_suite) {
    std::vector<Complex> lambdas;
    for (double off : {0.1, 1.0, 10.0}) {
      lambdas.emplace_back(s.upper.value + off, 0.0);
      lambdas.emplace_back(s.lower.value - off, 0.0);
    }
    const double scale = 1.0 + std::abs(s.upper.value) + std::abs(s.lower.value);
    for (int t = 0; t < 20; ++t) {
      lambdas.emplace_back(testing::uniform(rng, -scale, scale),
                           testing::uniform(rng, 0.05, 1.0) * scale * (t % 2 == 0 ? 1.0 : -1.0));
    }
    for (Complex lambda : lambdas) {
      cauchy::CauchyPoint p;
      try {
        p = cauchy::solve_G(s.model, lambda);
      } catch (const Error&) {
        ++nonconverged;
        continue;
      }
      if (!p.converged) continue;
      ++points;
      const auto m = static_cast<Eigen::Index>(s.model.m());
      const ComplexMatrix hh =
          (ComplexMatrix::Identity(m, m) - model::apply_phi_star(s.model, p.G)).inverse();
      worst_res = std::max(worst_res, equation_residual(s.model, p.G, lambda) / std::max(1.0, std::abs(lambda)));
      worst_h = std::max(worst_h, (p.H - hh).norm());
    }
  }
  Verdict v;
  v.pass = points > 0 && nonconverged == 0 && worst_res <= 1e-9 && worst_h <= 1e-9;
  v.detail = fmt("%.0f converged points, max scaled residual %.2e", points, worst_res) +
             fmt(", max H error %.2e, %.0f non-converged", worst_h, nonconverged);
  return v;
}

Verdict criterion5() {
  double worst = 0.0;
  int checked = 0;
  for (const auto& s : g_suite) {
    const double bmax = linalg::eig_extremes(s.model.shift()).max;
    const double pmax =
        linalg::eig_extremes(model::phi(s.model, HermitianMatrix::identity(s.model.m()))).max;
    const double r = 10.0 * (1.0 + bmax + pmax);
    for (Complex lambda : {Complex(r, 0.0), Complex(-r, 0.0), Complex(0.0, r), Complex(0.0, -r)}) {
      const ComplexMatrix series = cauchy::series_G(s.model, lambda, 60);
      const ComplexMatrix fixed = cauchy::solve_G(s.model, lambda).G;
      worst = std::max(worst, (series - fixed).norm());
      ++checked;
    }
  }
  Verdict v;
  v.pass = checked > 0 && worst <= 1e-8;
  v.detail = fmt("%.0f points at |lambda| = 10(1+bmax+phimax), max |series - fixed point| %.2e",
                 checked, worst);
  return v;
}

Verdict criterion6() {
  Rng rng(kSuiteSeed + 6);
  double worst_up = -INFINITY;
  double worst_lo = -INFINITY;
  for (const auto& s : g_suite) {
    for (int t = 0; t < 100; ++t) {
      const double u = edges::eval_certificate(s.model, testing::random_upper_feasible(s.model, rng), Side::Upper);
      const double l = edges::eval_certificate(s.model, testing::random_lower_feasible(s.model, rng), Side::Lower);
      worst_up = std::max(worst_up, s.upper.value - u);
      worst_lo = std::max(worst_lo, l - s.lower.value);
    }
  }
  Verdict v;
  v.pass = !g_suite.empty() && worst_up <= 1e-8 && worst_lo <= 1e-8;
  v.detail = fmt("worst violation upper %.2e, lower %.2e (positive means violated)", worst_up, worst_lo);
  return v;
}

Verdict criterion7() {
  double shift_err = 0.0;
  double scale_err = 0.0;
  for (const auto& s : g_suite) {
    for (double c : {-3.0, 1.0, 10.0}) {
      const auto sh = s.model.shifted(c);
      shift_err = std::max({shift_err, std::abs(edges::upper_edge(sh).value - s.upper.value - c),
                            std::abs(edges::lower_edge(sh).value - s.lower.value - c)});
    }
    const auto base = s.model.with_shift(HermitianMatrix::zero(s.model.d()));
    const double up = edges::upper_edge(base).value;
    const double lo = edges::lower_edge(base).value;
    for (double t : {0.5, 2.0}) {
      const auto sc = base.scaled(t);
      const double ref = std::max(1e-300, t * t * up);
      scale_err = std::max({scale_err, std::abs(edges::upper_edge(sc).value - t * t * up) / ref,
                            std::abs(edges::lower_edge(sc).value - t * t * lo) / ref});
    }
  }
  Verdict v;
  v.pass = !g_suite.empty() && shift_err <= 1e-7 && scale_err <= 1e-7;
  v.detail = fmt("max shift error %.2e, max relative scale error %.2e", shift_err, scale_err);
  return v;
}

double rel(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

Verdict criterion8() {
  Rng rng(kSuiteSeed + 8);
  int schur_fail = 0;
  int block_fail = 0;
  int wood_fail = 0;
  int wood_checked = 0;
  int dil_fail = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t d1 = testing::uniform_count(rng, 1, 4);
    const std::size_t d2 = testing::uniform_count(rng, 1, 4);
    const double shift = testing::uniform(rng, -1.0, 4.0);
    const linalg::BlockMatrix2x2 m{testing::random_hermitian(rng, d1).shifted(shift),
                                   testing::random_complex(rng, d1, d2),
                                   testing::random_hermitian(rng, d2).shifted(shift)};
    const HermitianMatrix full = m.assemble();
    const bool direct = linalg::eig_extremes(full).min > linalg::positivity_margin(full.matrix());
    schur_fail += direct != linalg::schur_complement(m).positive;
  }
  for (int t = 0; t < 100; ++t) {
    const std::size_t d1 = testing::uniform_count(rng, 1, 4);
    const std::size_t d2 = testing::uniform_count(rng, 1, 4);
    const linalg::BlockMatrix2x2 m{testing::random_hermitian(rng, d1),
                                   testing::random_complex(rng, d1, d2),
                                   testing::random_hermitian(rng, d2).shifted(2.0)};
    const ComplexMatrix full = m.assemble().matrix();
    block_fail += rel(linalg::block_inverse(m) * full, ComplexMatrix::Identity(full.rows(), full.cols())) >= 1e-10;
  }
  while (wood_checked < 100) {
    const std::size_t d1 = testing::uniform_count(rng, 1, 5);
    const std::size_t d2 = testing::uniform_count(rng, 1, 5);
    const ComplexMatrix b = testing::random_complex(rng, d1, d2);
    const HermitianMatrix d = testing::random_hermitian(rng, d2).shifted(testing::uniform(rng, -2, 4));
    if (!linalg::is_invertible(d.matrix())) continue;
    const ComplexMatrix lhs = ComplexMatrix::Identity(d1, d1) - b * d.matrix().inverse() * b.adjoint();
    if (!linalg::is_invertible(lhs) || !linalg::is_invertible(d.matrix() - b.adjoint() * b)) continue;
    ++wood_checked;
    const ComplexMatrix direct = lhs.inverse();
    wood_fail += rel(linalg::woodbury_inverse(b, d).matrix(), direct) >= 1e-10 * std::max(1.0, direct.norm());
  }
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = testing::uniform_count(rng, 1, 6);
    const std::size_t m = testing::uniform_count(rng, 1, 9);
    const ComplexMatrix y = testing::random_complex(rng, d, m);
    const RealVector ev = linalg::eigenvalues(linalg::dilation(y));
    const RealVector s = Eigen::BDCSVD<ComplexMatrix>(y).singularValues();
    std::vector<double> expect;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      expect.push_back(s(i));
      expect.push_back(-s(i));
    }
    while (expect.size() < static_cast<std::size_t>(ev.size())) expect.push_back(0.0);
    std::sort(expect.begin(), expect.end());
    bool ok = expect.size() == static_cast<std::size_t>(ev.size());
    for (Eigen::Index i = 0; ok && i < ev.size(); ++i) ok = std::abs(ev(i) - expect[static_cast<std::size_t>(i)]) < 1e-10;
    dil_fail += !ok;
  }
  Verdict v;
  v.pass = schur_fail + block_fail + wood_fail + dil_fail == 0;
  v.detail = "failures: schur " + std::to_string(schur_fail) + "/100, block inverse " +
             std::to_string(block_fail) + "/100, woodbury " + std::to_string(wood_fail) +
             "/100, dilation " + std::to_string(dil_fail) + "/100";
  return v;
}

Verdict criterion9() {
  const auto t0 = Clock::now();
  mc::McConfig cfg;
  cfg.seed = kMcSeed;
  cfg.samples = 20;
  cfg.dim = 500;
  const mc::McEdgeStats sc = mc::mc_edges(scalar_model(), cfg);
  cfg.dim = 300;
  const mc::McEdgeStats mp = mc::mc_edges(model::from_variance_profile(flat_profile(2, 8)), cfg);
  const double elapsed = seconds_since(t0);
  Verdict v;
  v.pass = std::abs(sc.mean_max - 4.0) <= 0.4 && sc.mean_min <= 0.15 &&
           std::abs(mp.mean_max - 2.25) <= 0.225 && std::abs(mp.mean_min - 0.25) <= 0.1 &&
           elapsed < 120.0;
  v.detail = "seed " + std::to_string(kMcSeed) + fmt(": scalar N=500 mean max %.4f, min %.4f", sc.mean_max, sc.mean_min) +
             fmt("; MP N=300 mean max %.4f, min %.4f", mp.mean_max, mp.mean_min) + fmt(", %.1f s", elapsed);
  return v;
}

Verdict criterion10() {
  Rng rng(kSuiteSeed + 10);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const auto p = testing::random_profile(rng, 6, 2.0);
    const auto fm = model::from_variance_profile(p);
    worst = std::max({worst, std::abs(diagonal::diag_upper_edge(p).value - edges::upper_edge(fm).value),
                      std::abs(diagonal::diag_lower_edge(p).value - edges::lower_edge(fm).value)});
  }
  Verdict v;
  v.pass = worst <= 1e-7;
  v.detail = fmt("50 profiles, max |diagonal - full| %.2e", worst);
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Verdict (*run)();
  };
  const Criterion criteria[] = {
      {1, "scalar semicircle edges", criterion1},
      {2, "Marchenko-Pastur edges", criterion2},
      {3, "cross-method agreement", criterion3},
      {4, "fixed-point residual and H identity", criterion4},
      {5, "series oracle", criterion5},
      {6, "certificate soundness", criterion6},
      {7, "shift and scale covariance", criterion7},
      {8, "matrix identity suites", criterion8},
      {9, "Monte Carlo sanity", criterion9},
      {10, "diagonal reduction", criterion10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("[%s] %2d %s: %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
