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

#include "freeedge/model.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace freeedge::model {
namespace {

bool finite(const ComplexMatrix& m) { return m.allFinite(); }

bool is_diagonal(const ComplexMatrix& m, double tol) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j && std::abs(m(i, j)) > tol) return false;
    }
  }
  return true;
}

}  // namespace

void validate(const ModelSpec& spec) {
  const auto d = static_cast<Eigen::Index>(spec.d);
  const auto m = static_cast<Eigen::Index>(spec.m);
  if (d == 0 || m == 0) {
    throw Error(ErrorCode::ShapeMismatch, "dimensions d and m must be positive");
  }
  for (std::size_t i = 0; i < spec.coeffs.size(); ++i) {
    const ComplexMatrix& a = spec.coeffs[i];
    if (a.rows() != d || a.cols() != m) {
      std::ostringstream msg;
      msg << "coefficient " << i << " is " << a.rows() << "x" << a.cols() << ", expected " << d
          << "x" << m;
      throw Error(ErrorCode::ShapeMismatch, msg.str());
    }
    if (!finite(a)) {
      throw Error(ErrorCode::NonFinite, "coefficient " + std::to_string(i) + " has NaN or Inf");
    }
  }
  if (spec.shift.rows() != d || spec.shift.cols() != d) {
    std::ostringstream msg;
    msg << "shift is " << spec.shift.rows() << "x" << spec.shift.cols() << ", expected " << d << "x"
        << d;
    throw Error(ErrorCode::ShapeMismatch, msg.str());
  }
  if (!finite(spec.shift)) throw Error(ErrorCode::NonFinite, "shift has NaN or Inf");
  // The checked constructor carries the asymmetry diagnostic.
  (void)HermitianMatrix(spec.shift);
}

FreeModel FreeModel::from_spec(const ModelSpec& spec) {
  validate(spec);
  return FreeModel(spec.d, spec.m, spec.coeffs, HermitianMatrix(spec.shift));
}

FreeModel::FreeModel(std::size_t d, std::size_t m, std::vector<ComplexMatrix> coeffs,
                     HermitianMatrix shift)
    : d_(d), m_(m), coeffs_(std::move(coeffs)), shift_(std::move(shift)) {
  ModelSpec spec{d_, m_, coeffs_, shift_.matrix()};
  validate(spec);

  // Dense superoperator pays off once n is comparable to d m; profile models
  // with many single-entry coefficients are the typical case.
  const double dd = static_cast<double>(d_);
  const double mm = static_cast<double>(m_);
  const double loop_cost = static_cast<double>(coeffs_.size()) * (dd * mm * mm + dd * dd * mm);
  const double dense_cost = dd * dd * mm * mm;
  if (!coeffs_.empty() && dense_cost < loop_cost && dense_cost <= 1 << 20) {
    auto k = std::make_shared<ComplexMatrix>(ComplexMatrix::Zero(d_ * d_, m_ * m_));
    for (const auto& a : coeffs_) *k += Eigen::kroneckerProduct(a.conjugate(), a).eval();
    super_ = std::move(k);
  }
}

bool FreeModel::is_trivial() const {
  for (const auto& a : coeffs_) {
    if (a.norm() > 0.0) return false;
  }
  return true;
}

FreeModel FreeModel::with_shift(const HermitianMatrix& shift) const {
  return FreeModel(d_, m_, coeffs_, shift);
}

FreeModel FreeModel::shifted(double c) const { return with_shift(shift_.shifted(c)); }

FreeModel FreeModel::scaled(double t) const {
  std::vector<ComplexMatrix> scaled = coeffs_;
  for (auto& a : scaled) a *= t;
  return FreeModel(d_, m_, std::move(scaled), shift_);
}

void VarianceProfile::check() const {
  if (static_cast<std::size_t>(bdiag.size()) != d()) {
    throw Error(ErrorCode::ShapeMismatch, "bdiag length " + std::to_string(bdiag.size()) +
                                              " does not match sigma2 rows " +
                                              std::to_string(d()));
  }
  if (!sigma2.allFinite() || !bdiag.allFinite()) {
    throw Error(ErrorCode::NonFinite, "variance profile has NaN or Inf entries");
  }
  for (Eigen::Index i = 0; i < sigma2.rows(); ++i) {
    for (Eigen::Index j = 0; j < sigma2.cols(); ++j) {
      if (sigma2(i, j) < 0.0) {
        std::ostringstream msg;
        msg << "sigma2(" << i << "," << j << ") = " << sigma2(i, j);
        throw Error(ErrorCode::NegativeVariance, msg.str());
      }
    }
  }
}

ComplexMatrix apply_phi(const FreeModel& model, const ComplexMatrix& y) {
  if (static_cast<std::size_t>(y.rows()) != model.m() ||
      static_cast<std::size_t>(y.cols()) != model.m()) {
    throw Error(ErrorCode::ShapeMismatch, "phi expects an m x m argument");
  }
  const auto d = static_cast<Eigen::Index>(model.d());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  if (const ComplexMatrix* k = model.superoperator()) {
    Eigen::Map<Eigen::VectorXcd>(out.data(), d * d).noalias() =
        *k * Eigen::Map<const Eigen::VectorXcd>(y.data(), y.size());
    return out;
  }
  for (const auto& a : model.coeffs()) out.noalias() += a * y * a.adjoint();
  return out;
}

ComplexMatrix apply_phi_star(const FreeModel& model, const ComplexMatrix& z) {
  if (static_cast<std::size_t>(z.rows()) != model.d() ||
      static_cast<std::size_t>(z.cols()) != model.d()) {
    throw Error(ErrorCode::ShapeMismatch, "phi_star expects a d x d argument");
  }
  const auto m = static_cast<Eigen::Index>(model.m());
  ComplexMatrix out = ComplexMatrix::Zero(m, m);
  if (const ComplexMatrix* k = model.superoperator()) {
    Eigen::Map<Eigen::VectorXcd>(out.data(), m * m).noalias() =
        k->adjoint() * Eigen::Map<const Eigen::VectorXcd>(z.data(), z.size());
    return out;
  }
  for (const auto& a : model.coeffs()) out.noalias() += a.adjoint() * z * a;
  return out;
}

HermitianMatrix phi(const FreeModel& model, const HermitianMatrix& y) {
  return HermitianMatrix::symmetrized(apply_phi(model, y.matrix()));
}

HermitianMatrix phi_star(const FreeModel& model, const HermitianMatrix& z) {
  return HermitianMatrix::symmetrized(apply_phi_star(model, z.matrix()));
}

FreeModel from_variance_profile(const VarianceProfile& profile) {
  profile.check();
  const std::size_t d = profile.d();
  const std::size_t m = profile.m();
  std::vector<ComplexMatrix> coeffs;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double s2 = profile.sigma2(i, j);
      if (s2 == 0.0) continue;
      ComplexMatrix a = ComplexMatrix::Zero(d, m);
      a(i, j) = std::sqrt(s2);
      coeffs.push_back(std::move(a));
    }
  }
  return FreeModel(d, m, std::move(coeffs), HermitianMatrix::diagonal(profile.bdiag));
}

bool is_diagonal_compatible(const FreeModel& model) {
  constexpr double tol = 1e-12;
  if (!is_diagonal(model.shift().matrix(), tol * std::max(1.0, model.shift().norm()))) return false;
  for (std::size_t k = 0; k < model.m(); ++k) {
    ComplexMatrix e = ComplexMatrix::Zero(model.m(), model.m());
    e(k, k) = 1.0;
    const ComplexMatrix out = apply_phi(model, e);
    if (!is_diagonal(out, tol * std::max(1.0, out.norm()))) return false;
  }
  for (std::size_t k = 0; k < model.d(); ++k) {
    ComplexMatrix e = ComplexMatrix::Zero(model.d(), model.d());
    e(k, k) = 1.0;
    const ComplexMatrix out = apply_phi_star(model, e);
    if (!is_diagonal(out, tol * std::max(1.0, out.norm()))) return false;
  }
  return true;
}

double norm_bound_xxstar(const FreeModel& model) {
  if (model.n() == 0) return 0.0;
  const double p = linalg::eig_extremes(phi(model, HermitianMatrix::identity(model.m()))).max;
  const double q = linalg::eig_extremes(phi_star(model, HermitianMatrix::identity(model.d()))).max;
  const double root = std::sqrt(std::max(p, 0.0)) + std::sqrt(std::max(q, 0.0));
  return root * root;
}

}  // namespace freeedge::model
