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

#include <Eigen/Dense>

#include "freeedge/error.hpp"

/// Dense complex linear algebra shared by every solver: Hermitian values,
/// extreme eigenvalues, block identities and the dilation.
namespace freeedge::linalg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Relative asymmetry accepted (and removed) by the checked constructor.
inline constexpr double kHermitianTolerance = 1e-12;
/// Scale factor of the strict positivity margin, see positivity_margin().
inline constexpr double kPositivityFactor = 1e-10;
/// Scale factor of the invertibility threshold on the smallest singular value.
inline constexpr double kInvertibilityFactor = 1e-12;

/// A square complex matrix equal to its conjugate transpose.
///
/// The checked constructor accepts inputs whose asymmetry is below
/// kHermitianTolerance relative to the Frobenius norm and stores (M + M*)/2;
/// anything more asymmetric is rejected with ErrorCode::NotHermitian.
/// Values are immutable once built.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m);

  /// Unconditionally symmetrizes; for values that are Hermitian by
  /// construction up to round-off.
  static HermitianMatrix symmetrized(const ComplexMatrix& m);
  static HermitianMatrix identity(std::size_t dim);
  static HermitianMatrix zero(std::size_t dim);
  static HermitianMatrix diagonal(const RealVector& diag);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  /// Returns this + c * identity.
  HermitianMatrix shifted(double c) const;
  HermitianMatrix scaled(double t) const;
  double norm() const { return m_.norm(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);

 private:
  ComplexMatrix m_;
};

struct EigenExtremes {
  double min;
  double max;
};

/// Smallest and largest eigenvalue. Throws ErrorCode::EigenFailure when the
/// eigensolver does not converge.
EigenExtremes eig_extremes(const HermitianMatrix& m);

/// All eigenvalues in ascending order.
RealVector eigenvalues(const HermitianMatrix& m);

/// M = [[A, B], [B*, D]] with A, D Hermitian.
struct BlockMatrix2x2 {
  HermitianMatrix a;
  ComplexMatrix b;
  HermitianMatrix d;

  /// Throws ErrorCode::ShapeMismatch when the block sizes are inconsistent.
  void check_shapes() const;
  HermitianMatrix assemble() const;
};

struct SchurResult {
  HermitianMatrix complement;  // M/D = A - B D^{-1} B*
  /// D > 0 and M/D > 0, which is equivalent to M > 0.
  bool positive;
};

SchurResult schur_complement(const BlockMatrix2x2& m);

/// Inverse of the assembled block matrix through the Schur complement M/D.
ComplexMatrix block_inverse(const BlockMatrix2x2& m);

/// (1 - B D^{-1} B*)^{-1} evaluated as 1 + B (D - B* B)^{-1} B*.
/// Every inverse on either side must exist, otherwise ErrorCode::SingularBlock.
HermitianMatrix woodbury_inverse(const ComplexMatrix& b, const HermitianMatrix& d);

/// The self-adjoint dilation [[0, y*], [y, 0]] of a d x m matrix y, of size
/// (m + d). Its nonzero eigenvalues are plus and minus the singular values of y.
HermitianMatrix dilation(const ComplexMatrix& y);

// ---------------------------------------------------------------------------
// Thresholds and checked inverses.

/// 1e-10 * max(1, |M|_F); M > 0 means lambda_min(M) exceeds this margin.
double positivity_margin(const ComplexMatrix& m);
bool is_positive_definite(const HermitianMatrix& m);
bool is_negative_definite(const HermitianMatrix& m);

/// sigma_min(M) > 1e-12 * max(1, |M|_F).
bool is_invertible(const ComplexMatrix& m);

/// General square inverse; throws Error(code) when M is numerically singular.
ComplexMatrix inverse(const ComplexMatrix& m, ErrorCode code, const char* what);

/// Inverse of a Hermitian matrix through its eigendecomposition.
HermitianMatrix hermitian_inverse(const HermitianMatrix& m, ErrorCode code, const char* what);

/// Principal square root of a positive semidefinite matrix.
HermitianMatrix psd_sqrt(const HermitianMatrix& m);

// ---------------------------------------------------------------------------
// Real coordinates on the space of Hermitian matrices.
//
// The vectorization lists the diagonal first, then sqrt(2) Re and sqrt(2) Im
// of the strict upper triangle row by row, so that the Euclidean inner product
// of two vectors equals the trace inner product tr(X Y) of the matrices.

std::size_t hermitian_real_dim(std::size_t dim);
RealVector to_real(const ComplexMatrix& hermitian);
ComplexMatrix from_real(const RealVector& v, std::size_t dim);

}  // namespace freeedge::linalg
