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
#include <functional>

#include "doctest.h"
#include "freeedge/diagonal.hpp"
#include "freeedge/edges.hpp"
#include "random_models.hpp"

using namespace freeedge;
using namespace freeedge::edges;
using freeedge::testing::Rng;
using linalg::ComplexMatrix;
using linalg::HermitianMatrix;
using linalg::RealMatrix;
using linalg::RealVector;

namespace {

// Golden-section search for the minimum of a unimodal scalar function.
double golden_min(const std::function<double(double)>& f, double lo, double hi) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  for (int it = 0; it < 200 && b - a > 1e-13 * (1.0 + std::abs(a)); ++it) {
    if (f(c) < f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - r * (b - a);
    d = a + r * (b - a);
  }
  return f(0.5 * (a + b));
}

model::FreeModel scalar_model() {
  return model::FreeModel(1, 1, {ComplexMatrix::Ones(1, 1)}, HermitianMatrix::zero(1));
}

model::VarianceProfile flat_profile(std::size_t d, std::size_t m) {
  return {RealMatrix::Constant(d, m, 1.0 / static_cast<double>(m)), RealVector::Zero(d)};
}

model::FreeModel shift_only() {
  return model::FreeModel(2, 1, {}, HermitianMatrix::diagonal(RealVector{{1.0, 2.0}}));
}

HermitianMatrix scalar(double x) { return HermitianMatrix::identity(1).scaled(x); }

void check_upper_invariants(const model::FreeModel& fm, const EdgeResult& r) {
  CHECK(r.side == Side::Upper);
  CHECK(linalg::is_positive_definite(r.certificate));
  CHECK(linalg::is_positive_definite(
      model::phi_star(fm, r.certificate).scaled(-1.0).shifted(1.0)));
  CHECK(r.certificate_value >= r.value - 1e-9);
}

void check_lower_invariants(const EdgeResult& r) {
  CHECK(r.side == Side::Lower);
  CHECK(linalg::is_negative_definite(r.certificate));
  CHECK(r.certificate_value <= r.value + 1e-9);
}

}  // namespace

TEST_SUITE("edges") {

TEST_CASE("objective_h examples") {
  const auto fm = scalar_model();
  CHECK(objective_h(fm, scalar(0.5))(0, 0).real() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(objective_h(fm, scalar(0.25))(0, 0).real() == doctest::Approx(16.0 / 3.0).epsilon(1e-15));
  const auto b_only = shift_only();
  const HermitianMatrix z = HermitianMatrix::diagonal(RealVector{{0.5, -4.0}});
  const HermitianMatrix h = objective_h(b_only, z);
  CHECK(h(0, 0).real() == doctest::Approx(3.0));
  CHECK(h(1, 1).real() == doctest::Approx(1.75));

  try {
    objective_h(fm, scalar(0.0));
    FAIL("expected SingularZ");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularZ);
  }
  try {
    objective_h(fm, scalar(1.0));
    FAIL("expected SingularResolvent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularResolvent);
  }
}

TEST_CASE("scalar semicircle edges") {
  const auto fm = scalar_model();
  const double oracle = golden_min([](double z) { return 1.0 / z + 1.0 / (1.0 - z); }, 1e-9, 1.0 - 1e-9);
  CHECK(oracle == doctest::Approx(4.0).epsilon(1e-10));
  const EdgeResult up = upper_edge(fm);
  CHECK(std::abs(up.value - 4.0) <= 1e-8);
  CHECK(std::abs(up.value - oracle) <= 1e-8);
  CHECK(up.certificate(0, 0).real() == doctest::Approx(0.5).epsilon(1e-6));
  check_upper_invariants(fm, up);
  CHECK(up.method == Method::Variational);

  const EdgeResult lo = lower_edge(fm);
  CHECK(std::abs(lo.value) <= 1e-6);
  check_lower_invariants(lo);
}

TEST_CASE("Marchenko-Pastur profile d=2, m=8") {
  const auto p = flat_profile(2, 8);
  const auto fm = model::from_variance_profile(p);
  // Symmetric reduction v = (t, t): 1/t + 1/(1 - t/4).
  const auto f = [](double t) { return 1.0 / t + 1.0 / (1.0 - t / 4.0); };
  const double grid_up = golden_min(f, 1e-9, 4.0 - 1e-9);
  const double grid_lo = -golden_min([&](double t) { return -f(-t); }, 1e-6, 1e6);
  CHECK(grid_up == doctest::Approx(2.25).epsilon(1e-9));
  CHECK(grid_lo == doctest::Approx(0.25).epsilon(1e-6));

  const EdgeResult up = upper_edge(fm);
  const EdgeResult lo = lower_edge(fm);
  CHECK(std::abs(up.value - 2.25) <= 1e-6);
  CHECK(std::abs(lo.value - 0.25) <= 1e-6);
  check_upper_invariants(fm, up);
  check_lower_invariants(lo);
}

TEST_CASE("x = 0 gives the edges of b") {
  const auto fm = shift_only();
  const EdgeResult up = upper_edge(fm);
  const EdgeResult lo = lower_edge(fm);
  CHECK(up.value == 2.0);
  CHECK(lo.value == 1.0);
  CHECK(up.boundary_escape);
  CHECK(lo.boundary_escape);
  check_upper_invariants(fm, up);
  check_lower_invariants(lo);
  CHECK(dilated_cross_check(fm).value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("self-adjoint formula examples") {
  const HermitianMatrix zero = HermitianMatrix::zero(1);
  const HermitianMatrix one = HermitianMatrix::identity(1);
  CHECK(std::abs(lehner_selfadjoint_max(zero, {one}).value - 2.0) <= 1e-8);
  CHECK(std::abs(lehner_selfadjoint_max(one.scaled(1.5), {one}).value - 3.5) <= 1e-8);
  const double oracle = golden_min([](double z) { return 1.0 / z + 2.0 * z; }, 1e-6, 10.0);
  const EdgeResult two = lehner_selfadjoint_max(zero, {one, one});
  CHECK(std::abs(two.value - std::sqrt(8.0)) <= 1e-8);
  CHECK(std::abs(two.value - oracle) <= 1e-8);
  CHECK(two.certificate_value >= two.value - 1e-12);

  // A 2 x 2 instance with a known answer: a1 = diag(1, 2) gives max(2, 4).
  const HermitianMatrix a1 = HermitianMatrix::diagonal(RealVector{{1.0, 2.0}});
  CHECK(std::abs(lehner_selfadjoint_max(HermitianMatrix::zero(2), {a1}).value - 4.0) <= 1e-8);
  CHECK_THROWS_AS(lehner_selfadjoint_max(zero, {HermitianMatrix::identity(2)}), Error);
}

TEST_CASE("dilation cross-check on the scalar model") {
  const auto fm = scalar_model();
  const EdgeResult r = dilated_cross_check(fm);
  CHECK(r.method == Method::Dilation);
  CHECK(r.certificate.dim() == 3);
  CHECK(std::abs(r.value - 4.0) <= 1e-6);
  // The self-adjoint value on the dilation is sqrt(5).
  CHECK(std::sqrt(r.value + 1.0) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
  CHECK(r.certificate_value >= r.value - 1e-9);
}

TEST_CASE("dilation cross-check matches upper_edge on random instances") {
  Rng rng(31);
  for (int t = 0; t < 5; ++t) {
    std::vector<ComplexMatrix> coeffs{testing::random_complex(rng, 2, 3),
                                      testing::random_complex(rng, 2, 3)};
    const model::FreeModel fm(2, 3, coeffs, testing::random_hermitian(rng, 2));
    CHECK(std::abs(dilated_cross_check(fm).value - upper_edge(fm).value) <= 1e-6);
  }
}

TEST_CASE("eval_certificate examples and feasibility checks") {
  const auto fm = scalar_model();
  CHECK(eval_certificate(fm, scalar(0.5), Side::Upper) == doctest::Approx(4.0));
  const double v = eval_certificate(fm, scalar(0.25), Side::Upper);
  CHECK(v == doctest::Approx(16.0 / 3.0));
  CHECK(v >= 4.0);
  CHECK(eval_certificate(fm, scalar(-1.0), Side::Lower) == doctest::Approx(-0.5));
  for (double z : {-0.5, 0.0, 1.0, 2.0}) {
    try {
      eval_certificate(fm, scalar(z), Side::Upper);
      FAIL("expected Infeasible");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Infeasible);
    }
  }
  CHECK_THROWS_AS(eval_certificate(fm, scalar(0.5), Side::Lower), Error);
}

TEST_CASE("random certificates bound the computed edges") {
  Rng rng(32);
  for (int k = 0; k < 6; ++k) {
    const auto fm = testing::random_model(rng);
    const EdgeResult up = upper_edge(fm);
    const EdgeResult lo = lower_edge(fm);
    check_upper_invariants(fm, up);
    check_lower_invariants(lo);
    for (int t = 0; t < 100; ++t) {
      CHECK(eval_certificate(fm, testing::random_upper_feasible(fm, rng), Side::Upper) >=
            up.value - 1e-8);
      CHECK(eval_certificate(fm, testing::random_lower_feasible(fm, rng), Side::Lower) <=
            lo.value + 1e-8);
    }
  }
}

TEST_CASE("shift covariance") {
  Rng rng(33);
  for (int k = 0; k < 3; ++k) {
    const auto fm = testing::random_model(rng);
    const double up = upper_edge(fm).value;
    const double lo = lower_edge(fm).value;
    for (double c : {-3.0, 1.0, 10.0}) {
      const auto s = fm.shifted(c);
      CHECK(std::abs(upper_edge(s).value - (up + c)) <= 1e-7);
      CHECK(std::abs(lower_edge(s).value - (lo + c)) <= 1e-7);
    }
  }
}

TEST_CASE("scaling with b = 0") {
  Rng rng(34);
  for (int k = 0; k < 3; ++k) {
    const auto raw = testing::random_model(rng);
    const auto fm = raw.with_shift(HermitianMatrix::zero(raw.d()));
    const double up = upper_edge(fm).value;
    const double lo = lower_edge(fm).value;
    for (double t : {0.5, 2.0}) {
      const auto s = fm.scaled(t);
      CHECK(std::abs(upper_edge(s).value - t * t * up) <= 1e-7 * std::max(1.0, t * t * up));
      CHECK(std::abs(lower_edge(s).value - t * t * lo) <= 1e-7 * std::max(1.0, t * t * up));
    }
  }
}

TEST_CASE("upper objective is midpoint convex on the feasible cone") {
  Rng rng(35);
  for (int k = 0; k < 10; ++k) {
    const auto fm = testing::random_model(rng);
    for (int t = 0; t < 20; ++t) {
      const HermitianMatrix z1 = testing::random_upper_feasible(fm, rng);
      const HermitianMatrix z2 = testing::random_upper_feasible(fm, rng);
      const HermitianMatrix mid = (z1 + z2).scaled(0.5);
      const double f1 = eval_certificate(fm, z1, Side::Upper);
      const double f2 = eval_certificate(fm, z2, Side::Upper);
      const double fm_ = eval_certificate(fm, mid, Side::Upper);
      CHECK(fm_ <= 0.5 * (f1 + f2) + 1e-10 * std::max(1.0, std::abs(f1) + std::abs(f2)));
    }
  }
}

TEST_CASE("flatness at attained optima") {
  const auto check_flat = [](const model::FreeModel& fm) {
    CHECK(upper_edge(fm).flatness_residual <= 1e-6);
    CHECK(lower_edge(fm).flatness_residual <= 1e-6);
  };
  check_flat(model::from_variance_profile(flat_profile(2, 8)));
  check_flat(model::from_variance_profile(flat_profile(1, 4)));
  Rng rng(36);
  std::vector<ComplexMatrix> coeffs{testing::random_complex(rng, 2, 3),
                                    testing::random_complex(rng, 2, 3)};
  check_flat(model::FreeModel(2, 3, coeffs, testing::random_hermitian(rng, 2)));
  CHECK(upper_edge(scalar_model()).flatness_residual <= 1e-6);
}

TEST_CASE("ordering of the edges") {
  Rng rng(37);
  for (int k = 0; k < 5; ++k) {
    const auto fm = testing::random_model(rng);
    CHECK(lower_edge(fm).value <= upper_edge(fm).value);
    const double beta = testing::uniform(rng, -2.0, 2.0);
    const auto iso = fm.with_shift(HermitianMatrix::identity(fm.d()).scaled(beta));
    CHECK(lower_edge(iso).value >= beta - 1e-9);
  }
}

TEST_CASE("agreement with the diagonal solvers on profiles") {
  Rng rng(38);
  for (int k = 0; k < 8; ++k) {
    const auto p = testing::random_profile(rng, 4);
    const auto fm = model::from_variance_profile(p);
    CHECK(std::abs(upper_edge(fm).value - diagonal::diag_upper_edge(p).value) <= 1e-8);
    CHECK(std::abs(lower_edge(fm).value - diagonal::diag_lower_edge(p).value) <= 1e-8);
  }
}

}  // TEST_SUITE
