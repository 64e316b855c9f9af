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
#include <memory>
#include <vector>

#include "freeedge/linalg.hpp"

/// Problem data: the free operator x = sum_i a_i (x) s_i with matrix
/// coefficients a_i (d x m) and a Hermitian shift b (d x d), the
/// independent-entries variance-profile form, and the completely positive
/// maps Phi(y) = sum_i a_i y a_i* and Phi*(z) = sum_i a_i* z a_i.
namespace freeedge::model {

using linalg::ComplexMatrix;
using linalg::HermitianMatrix;
using linalg::RealMatrix;
using linalg::RealVector;

/// Unvalidated model input, as read from a file or assembled by hand.
struct ModelSpec {
  std::size_t d = 0;
  std::size_t m = 0;
  std::vector<ComplexMatrix> coeffs;
  ComplexMatrix shift;
};

/// Throws ShapeMismatch, NotHermitian or NonFinite on the first violated
/// invariant.
void validate(const ModelSpec& spec);

class FreeModel {
 public:
  /// Validates and builds.
  static FreeModel from_spec(const ModelSpec& spec);
  FreeModel(std::size_t d, std::size_t m, std::vector<ComplexMatrix> coeffs, HermitianMatrix shift);

  std::size_t d() const { return d_; }
  std::size_t m() const { return m_; }
  std::size_t n() const { return coeffs_.size(); }
  const std::vector<ComplexMatrix>& coeffs() const { return coeffs_; }
  const ComplexMatrix& coeff(std::size_t i) const { return coeffs_[i]; }
  const HermitianMatrix& shift() const { return shift_; }

  /// True when every coefficient vanishes, so x = 0.
  bool is_trivial() const;

  FreeModel with_shift(const HermitianMatrix& shift) const;
  /// Replaces b by b + c * 1.
  FreeModel shifted(double c) const;
  /// Replaces every a_i by t * a_i.
  FreeModel scaled(double t) const;

  /// vec(Phi(y)) = K vec(y) with K = sum conj(a_i) (x) a_i, or null when the
  /// coefficient loop is cheaper (or K would be too large).
  const ComplexMatrix* superoperator() const { return super_.get(); }

 private:
  std::size_t d_;
  std::size_t m_;
  std::vector<ComplexMatrix> coeffs_;
  HermitianMatrix shift_;
  std::shared_ptr<const ComplexMatrix> super_;
};

/// Independent Gaussian entries with variances sigma2 (d x m) and a diagonal
/// shift with entries bdiag.
struct VarianceProfile {
  RealMatrix sigma2;
  RealVector bdiag;

  std::size_t d() const { return static_cast<std::size_t>(sigma2.rows()); }
  std::size_t m() const { return static_cast<std::size_t>(sigma2.cols()); }
  /// Throws NegativeVariance, NonFinite or ShapeMismatch.
  void check() const;
};

/// Phi(y) = sum_i a_i y a_i*, m x m -> d x d. General complex argument.
ComplexMatrix apply_phi(const FreeModel& model, const ComplexMatrix& y);
/// Phi*(z) = sum_i a_i* z a_i, d x d -> m x m. General complex argument.
ComplexMatrix apply_phi_star(const FreeModel& model, const ComplexMatrix& z);

HermitianMatrix phi(const FreeModel& model, const HermitianMatrix& y);
HermitianMatrix phi_star(const FreeModel& model, const HermitianMatrix& z);

/// One coefficient sigma_ij e_i e_j* per nonzero variance; shift diag(bdiag).
FreeModel from_variance_profile(const VarianceProfile& profile);

/// Whether the diagonal subalgebras are invariant: b diagonal, Phi and Phi*
/// map diagonal matrices to diagonal matrices.
bool is_diagonal_compatible(const FreeModel& model);

/// Upper bound on |x x*| = |x|^2 from |x| <= |Phi(1)|^{1/2} + |Phi*(1)|^{1/2}.
double norm_bound_xxstar(const FreeModel& model);

}  // namespace freeedge::model
