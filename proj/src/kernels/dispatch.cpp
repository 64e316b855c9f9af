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
#include <string>

#include "freeedge/kernels.hpp"

namespace freeedge::kernels {

#if !FREEEDGE_HAVE_AVX2_TU
void caxpy_avx2(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
  caxpy_scalar(n, alpha, x, y);
}
#endif

bool avx2_available() {
#if FREEEDGE_HAVE_AVX2_TU && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

Isa select() {
  if (const char* env = std::getenv("FREE_EDGE_SIMD")) {
    if (std::string(env) == "scalar") return Isa::Scalar;
  }
  return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa active_isa() {
  static const Isa isa = select();
  return isa;
}

void caxpy(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
  if (active_isa() == Isa::Avx2) {
    caxpy_avx2(n, alpha, x, y);
  } else {
    caxpy_scalar(n, alpha, x, y);
  }
}

}  // namespace freeedge::kernels
