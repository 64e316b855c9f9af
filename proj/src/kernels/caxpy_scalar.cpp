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

#include "freeedge/kernels.hpp"

namespace freeedge::kernels {

void caxpy_scalar(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  for (std::size_t k = 0; k < n; ++k) {
    const double xr = x[k].real();
    const double xi = x[k].imag();
    // Same operation order as the vector variant: products, then the sum.
    const double pr = ar * xr;
    const double qr = ai * xi;
    const double pi = ar * xi;
    const double qi = ai * xr;
    y[k] = Complex(y[k].real() + (pr - qr), y[k].imag() + (pi + qi));
  }
}

}  // namespace freeedge::kernels
