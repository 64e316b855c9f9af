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

#include "freeedge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace freeedge::linalg {
namespace {

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

Eigen::SelfAdjointEigenSolver<ComplexMatrix> decompose(const ComplexMatrix& m, bool vectors) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      m, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "Hermitian eigensolver did not converge (dim " << m.rows() << ", |M|_F " << m.norm()
        << ")";
    throw Error(ErrorCode::EigenFailure, msg.str());
  }
  return solver;
}

double smallest_singular_value(const ComplexMatrix& m) {
  if (m.size() == 0) return 1.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().minCoeff();
}

double invertibility_threshold(const ComplexMatrix& m) {
  return kInvertibilityFactor * std::max(1.0, m.norm());
}

}  // namespace

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << "expected a square matrix, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorCode::ShapeMismatch, msg.str());
  }
  if (!all_finite(m)) throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
  const double asym = (m - m.adjoint()).norm();
  if (asym > kHermitianTolerance * m.norm()) {
    std::ostringstream msg;
    msg << "asymmetry |M - M*|_F = " << asym << " exceeds tolerance";
    throw Error(ErrorCode::NotHermitian, msg.str());
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& m) {
  HermitianMatrix h;
  h.m_ = 0.5 * (m + m.adjoint());
  return h;
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
  HermitianMatrix h;
  h.m_ = ComplexMatrix::Identity(dim, dim);
  return h;
}

HermitianMatrix HermitianMatrix::zero(std::size_t dim) {
  HermitianMatrix h;
  h.m_ = ComplexMatrix::Zero(dim, dim);
  return h;
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& diag) {
  HermitianMatrix h;
  h.m_ = diag.cast<Complex>().asDiagonal();
  return h;
}

HermitianMatrix HermitianMatrix::shifted(double c) const {
  HermitianMatrix h = *this;
  h.m_.diagonal().array() += c;
  return h;
}

HermitianMatrix HermitianMatrix::scaled(double t) const {
  HermitianMatrix h;
  h.m_ = t * m_;
  return h;
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::symmetrized(a.m_ + b.m_);
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::symmetrized(a.m_ - b.m_);
}

EigenExtremes eig_extremes(const HermitianMatrix& m) {
  if (m.dim() == 0) throw Error(ErrorCode::InvalidArgument, "eig_extremes of an empty matrix");
  const auto solver = decompose(m.matrix(), false);
  const auto& ev = solver.eigenvalues();
  return {ev(0), ev(ev.size() - 1)};
}

RealVector eigenvalues(const HermitianMatrix& m) {
  if (m.dim() == 0) return RealVector();
  return decompose(m.matrix(), false).eigenvalues();
}

void BlockMatrix2x2::check_shapes() const {
  if (static_cast<std::size_t>(b.rows()) != a.dim() ||
      static_cast<std::size_t>(b.cols()) != d.dim()) {
    std::ostringstream msg;
    msg << "block B is " << b.rows() << "x" << b.cols() << ", expected " << a.dim() << "x"
        << d.dim();
    throw Error(ErrorCode::ShapeMismatch, msg.str());
  }
}

HermitianMatrix BlockMatrix2x2::assemble() const {
  check_shapes();
  const Eigen::Index n1 = a.matrix().rows();
  const Eigen::Index n2 = d.matrix().rows();
  ComplexMatrix m(n1 + n2, n1 + n2);
  m.topLeftCorner(n1, n1) = a.matrix();
  m.topRightCorner(n1, n2) = b;
  m.bottomLeftCorner(n2, n1) = b.adjoint();
  m.bottomRightCorner(n2, n2) = d.matrix();
  return HermitianMatrix::symmetrized(m);
}

SchurResult schur_complement(const BlockMatrix2x2& m) {
  m.check_shapes();
  const HermitianMatrix d_inv = hermitian_inverse(m.d, ErrorCode::SingularBlock, "block D");
  HermitianMatrix complement =
      HermitianMatrix::symmetrized(m.a.matrix() - m.b * d_inv.matrix() * m.b.adjoint());
  const bool positive = is_positive_definite(m.d) && is_positive_definite(complement);
  return {std::move(complement), positive};
}

ComplexMatrix block_inverse(const BlockMatrix2x2& m) {
  const SchurResult schur = schur_complement(m);
  const HermitianMatrix d_inv = hermitian_inverse(m.d, ErrorCode::SingularBlock, "block D");
  const HermitianMatrix s_inv =
      hermitian_inverse(schur.complement, ErrorCode::SingularBlock, "Schur complement M/D");
  const ComplexMatrix& di = d_inv.matrix();
  const ComplexMatrix& si = s_inv.matrix();
  const ComplexMatrix upper_right = -si * m.b * di;

  const Eigen::Index n1 = m.a.matrix().rows();
  const Eigen::Index n2 = m.d.matrix().rows();
  ComplexMatrix inv(n1 + n2, n1 + n2);
  inv.topLeftCorner(n1, n1) = si;
  inv.topRightCorner(n1, n2) = upper_right;
  inv.bottomLeftCorner(n2, n1) = upper_right.adjoint();
  inv.bottomRightCorner(n2, n2) = di + di * m.b.adjoint() * si * m.b * di;
  return inv;
}

HermitianMatrix woodbury_inverse(const ComplexMatrix& b, const HermitianMatrix& d) {
  if (static_cast<std::size_t>(b.cols()) != d.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "woodbury: B columns must match dim(D)");
  }
  const Eigen::Index n1 = b.rows();
  const ComplexMatrix eye = ComplexMatrix::Identity(n1, n1);
  // Both sides of the identity must be defined.
  const HermitianMatrix d_inv = hermitian_inverse(d, ErrorCode::SingularBlock, "D");
  const HermitianMatrix lhs =
      HermitianMatrix::symmetrized(eye - b * d_inv.matrix() * b.adjoint());
  if (!is_invertible(lhs.matrix())) {
    throw Error(ErrorCode::SingularBlock, "1 - B D^{-1} B* is singular");
  }
  const HermitianMatrix inner = HermitianMatrix::symmetrized(d.matrix() - b.adjoint() * b);
  const HermitianMatrix inner_inv = hermitian_inverse(inner, ErrorCode::SingularBlock, "D - B* B");
  return HermitianMatrix::symmetrized(eye + b * inner_inv.matrix() * b.adjoint());
}

HermitianMatrix dilation(const ComplexMatrix& y) {
  const Eigen::Index rows = y.rows();
  const Eigen::Index cols = y.cols();
  ComplexMatrix m = ComplexMatrix::Zero(rows + cols, rows + cols);
  m.topRightCorner(cols, rows) = y.adjoint();
  m.bottomLeftCorner(rows, cols) = y;
  return HermitianMatrix::symmetrized(m);
}

double positivity_margin(const ComplexMatrix& m) {
  return kPositivityFactor * std::max(1.0, m.norm());
}

bool is_positive_definite(const HermitianMatrix& m) {
  if (m.dim() == 0) return true;
  return eig_extremes(m).min > positivity_margin(m.matrix());
}

bool is_negative_definite(const HermitianMatrix& m) {
  if (m.dim() == 0) return true;
  return eig_extremes(m).max < -positivity_margin(m.matrix());
}

bool is_invertible(const ComplexMatrix& m) {
  return smallest_singular_value(m) > invertibility_threshold(m);
}

ComplexMatrix inverse(const ComplexMatrix& m, ErrorCode code, const char* what) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::ShapeMismatch, std::string(what) + " not square");
  if (m.size() == 0) return m;
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  if (!(s.minCoeff() > invertibility_threshold(m))) {
    std::ostringstream msg;
    msg << what << " is numerically singular (sigma_min " << s.minCoeff() << ")";
    throw Error(code, msg.str());
  }
  return svd.matrixV() * s.cwiseInverse().cast<Complex>().asDiagonal() * svd.matrixU().adjoint();
}

HermitianMatrix hermitian_inverse(const HermitianMatrix& m, ErrorCode code, const char* what) {
  if (m.dim() == 0) return m;
  const auto solver = decompose(m.matrix(), true);
  const RealVector& ev = solver.eigenvalues();
  if (!(ev.cwiseAbs().minCoeff() > invertibility_threshold(m.matrix()))) {
    std::ostringstream msg;
    msg << what << " is numerically singular (min |eigenvalue| " << ev.cwiseAbs().minCoeff()
        << ")";
    throw Error(code, msg.str());
  }
  const ComplexMatrix& u = solver.eigenvectors();
  return HermitianMatrix::symmetrized(u * ev.cwiseInverse().cast<Complex>().asDiagonal() *
                                      u.adjoint());
}

HermitianMatrix psd_sqrt(const HermitianMatrix& m) {
  if (m.dim() == 0) return m;
  const auto solver = decompose(m.matrix(), true);
  const RealVector root = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix& u = solver.eigenvectors();
  return HermitianMatrix::symmetrized(u * root.cast<Complex>().asDiagonal() * u.adjoint());
}

std::size_t hermitian_real_dim(std::size_t dim) { return dim * dim; }

RealVector to_real(const ComplexMatrix& h) {
  const Eigen::Index n = h.rows();
  RealVector v(n * n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) v(k++) = h(i, i).real();
  const double s = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      v(k++) = s * h(i, j).real();
      v(k++) = s * h(i, j).imag();
    }
  }
  return v;
}

ComplexMatrix from_real(const RealVector& v, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix h(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) h(i, i) = v(k++);
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double re = s * v(k++);
      const double im = s * v(k++);
      h(i, j) = Complex(re, im);
      h(j, i) = Complex(re, -im);
    }
  }
  return h;
}

}  // namespace freeedge::linalg
