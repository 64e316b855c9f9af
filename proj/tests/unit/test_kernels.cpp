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

#include <cstdlib>
#include <random>
#include <vector>

#include "doctest.h"
#include "freeedge/kernels.hpp"

using namespace freeedge::kernels;

namespace {

std::vector<Complex> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> v(n);
  for (auto& x : v) x = Complex(u(rng), u(rng));
  return v;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar caxpy reference values") {
  const std::vector<Complex> x{{1.0, 2.0}, {-3.0, 0.5}};
  std::vector<Complex> y{{0.0, 0.0}, {1.0, 1.0}};
  caxpy_scalar(2, Complex(0.0, 1.0), x.data(), y.data());
  CHECK(y[0] == Complex(-2.0, 1.0));
  CHECK(y[1] == Complex(0.5, -2.0));
  caxpy_scalar(0, Complex(1.0, 1.0), x.data(), y.data());
  CHECK(y[0] == Complex(-2.0, 1.0));
}

TEST_CASE("AVX2 caxpy is bitwise identical to scalar") {
  if (!avx2_available()) {
    MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
    return;
  }
  std::mt19937_64 rng(71);
  for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 63, 64, 101, 1000}) {
    const auto x = random_vec(n, rng);
    auto y1 = random_vec(n, rng);
    auto y2 = y1;
    const Complex alpha = random_vec(1, rng)[0];
    caxpy_scalar(n, alpha, x.data(), y1.data());
    caxpy_avx2(n, alpha, x.data(), y2.data());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(y1[i].real() == y2[i].real());
      CHECK(y1[i].imag() == y2[i].imag());
    }
  }
  // Unaligned start.
  const auto x = random_vec(33, rng);
  auto y1 = random_vec(33, rng);
  auto y2 = y1;
  caxpy_scalar(32, Complex(0.3, -0.7), x.data() + 1, y1.data() + 1);
  caxpy_avx2(32, Complex(0.3, -0.7), x.data() + 1, y2.data() + 1);
  CHECK(y1 == y2);
}

TEST_CASE("dispatch") {
  const Isa isa = active_isa();
  const char* forced = std::getenv("FREE_EDGE_SIMD");
  if (forced != nullptr && std::string_view(forced) == "scalar") {
    CHECK(isa == Isa::Scalar);
  } else {
    CHECK(isa == (avx2_available() ? Isa::Avx2 : Isa::Scalar));
  }
  CHECK(to_string(Isa::Scalar) == "scalar");
  CHECK(to_string(Isa::Avx2) == "avx2");
  std::mt19937_64 rng(72);
  const auto x = random_vec(9, rng);
  auto y1 = random_vec(9, rng);
  auto y2 = y1;
  caxpy(9, Complex(2.0, 1.0), x.data(), y1.data());
  caxpy_scalar(9, Complex(2.0, 1.0), x.data(), y2.data());
  CHECK(y1 == y2);
}

}  // TEST_SUITE
