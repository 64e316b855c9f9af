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
#include <cstddef>
#include <string_view>

// y += alpha * x on contiguous complex arrays, with a portable reference
// implementation and an AVX2 variant chosen once at runtime. Setting the
// environment variable FREE_EDGE_SIMD=scalar forces the reference path.
namespace freeedge::kernels {

using Complex = std::complex<double>;

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

void caxpy_scalar(std::size_t n, Complex alpha, const Complex* x, Complex* y);

/// True when the AVX2 variant was compiled in and the CPU supports it.
bool avx2_available();
/// Requires avx2_available().
void caxpy_avx2(std::size_t n, Complex alpha, const Complex* x, Complex* y);

/// The variant selected for this process.
Isa active_isa();
void caxpy(std::size_t n, Complex alpha, const Complex* x, Complex* y);

}  // namespace freeedge::kernels
