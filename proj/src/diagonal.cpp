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

#include "freeedge/diagonal.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "detail/spectral_engine.hpp"

namespace freeedge::diagonal {
namespace {

using detail::RealMatrix;
using linalg::ComplexMatrix;
using model::VarianceProfile;

constexpr double kMargin = 1e-9;

std::string infeasible_message(const char* what, Eigen::Index index) {
  std::ostringstream msg;
  msg << what << " violated at index " << index;
  return msg.str();
}

/// o(v) without feasibility checks; s holds the column sums sum_k sigma2_kj v_k.
RealVector raw_objective(const VarianceProfile& p, const RealVector& v, const RealVector& s) {
  const RealVector inv = (1.0 - s.array()).inverse().matrix();
  return p.bdiag + v.cwiseInverse() + p.sigma2 * inv;
}

/// Log-parametrized vector problem; `sign` = +1 gives v = e^u with F = diag(o),
/// -1 gives v = -e^u with F = -diag(o).
class DiagonalProblem final : public detail::SpectralProblem {
 public:
  DiagonalProblem(const VarianceProfile& profile, double sign) : p_(profile), sign_(sign) {}

  std::size_t param_dim() const override { return p_.d(); }
  std::size_t value_dim() const override { return p_.d(); }
  std::size_t image_dim() const override { return p_.d(); }

  RealVector image_coords(const ComplexMatrix& m) const override {
    return m.diagonal().real();
  }
  ComplexMatrix image_matrix(const RealVector& w) const override {
    return w.cast<linalg::Complex>().asDiagonal();
  }

  RealVector v_of(const RealVector& u) const { return sign_ * u.array().exp().matrix(); }

  std::optional<RealVector> objective(const RealVector& u) const {
    const RealVector v = v_of(u);
    if (!v.allFinite() || (v.array() == 0.0).any()) return std::nullopt;
    const RealVector s = p_.sigma2.transpose() * v;
    if (sign_ > 0.0 && s.size() > 0 && s.maxCoeff() > 1.0 - kMargin) return std::nullopt;
    return RealVector(sign_ * raw_objective(p_, v, s));
  }

  std::optional<ComplexMatrix> value(const RealVector& u) const override {
    const auto o = objective(u);
    if (!o) return std::nullopt;
    return image_matrix(*o);
  }

  // d/du_k sum_i w_i o_i = v_k * (-w_k / v_k^2 + sum_j sigma2_kj t_j), t = sigma2^T w / (1-s)^2.
  RealVector pullback(const RealVector& u, const ComplexMatrix& wm) const override {
    const RealVector v = v_of(u);
    const RealVector w = image_coords(wm);
    const RealVector s = p_.sigma2.transpose() * v;
    const RealVector t =
        ((p_.sigma2.transpose() * w).array() / (1.0 - s.array()).square()).matrix();
    const RealVector dv = -(w.array() / v.array().square()).matrix() + p_.sigma2 * t;
    return sign_ * (v.array() * dv.array()).matrix();
  }

  double barrier(const RealVector& u) const override {
    if (sign_ < 0.0) return 0.0;
    const RealVector s = p_.sigma2.transpose() * v_of(u);
    if ((s.array() >= 1.0).any()) return std::numeric_limits<double>::infinity();
    return -(1.0 - s.array()).log().sum();
  }

  RealVector barrier_gradient(const RealVector& u) const override {
    if (sign_ < 0.0) return RealVector::Zero(u.size());
    const RealVector v = v_of(u);
    const RealVector s = p_.sigma2.transpose() * v;
    const RealVector g = p_.sigma2 * (1.0 - s.array()).inverse().matrix();
    return (v.array() * g.array()).matrix();
  }

  std::optional<RealVector> far_start(double lambda) const override {
    if (!(lambda > 0.0)) return std::nullopt;
    return RealVector::Constant(u_dim(), -std::log(lambda));
  }

 private:
  Eigen::Index u_dim() const { return static_cast<Eigen::Index>(p_.d()); }

  const VarianceProfile& p_;
  double sign_;
};

EdgeResult result_at(const VarianceProfile& profile, const RealVector& v, Side side, int iters) {
  EdgeResult r;
  r.method = Method::Diagonal;
  r.side = side;
  const RealVector o = diag_objective(profile, v, side);
  r.certificate = linalg::HermitianMatrix::diagonal(v);
  r.certificate_value = side == Side::Upper ? o.maxCoeff() : o.minCoeff();
  r.value = r.certificate_value;
  r.flatness_residual = o.maxCoeff() - o.minCoeff();
  r.iterations = iters;
  return r;
}

bool better(const EdgeResult& a, const EdgeResult& b, Side side) {
  return side == Side::Upper ? a.certificate_value < b.certificate_value
                             : a.certificate_value > b.certificate_value;
}

EdgeResult solve(const VarianceProfile& profile, Side side, const SolverOptions& opts) {
  profile.check();
  const auto d = static_cast<Eigen::Index>(profile.d());
  const double bmin = profile.bdiag.minCoeff();
  const double bmax = profile.bdiag.maxCoeff();

  if ((profile.sigma2.array() == 0.0).all()) {
    const double t = 1e12 * std::max(1.0, profile.bdiag.norm());
    const double sign = side == Side::Upper ? 1.0 : -1.0;
    EdgeResult r = result_at(profile, RealVector::Constant(d, sign * t), side, 0);
    r.value = side == Side::Upper ? bmax : bmin;
    r.boundary_escape = true;
    r.note = "zero profile: edge of b, optimum escapes to infinity";
    return r;
  }

  const double sign = side == Side::Upper ? 1.0 : -1.0;
  DiagonalProblem problem(profile, sign);
  const double colmax = profile.sigma2.colwise().sum().maxCoeff();
  const double t0 = side == Side::Upper ? 0.5 / std::max(1.0, colmax) : 1.0;
  const RealVector u0 = RealVector::Constant(d, std::log(t0));

  detail::EngineOptions eo;
  eo.max_iter = opts.max_iter;
  const auto res = detail::minimize_lambda_max(problem, u0, eo);
  EdgeResult best = result_at(profile, problem.v_of(res.x), side, res.iterations);
  if (res.polished) return best;

  // Flat solutions o(v) = lambda 1 exist exactly beyond the edge; bisect on that.
  const double row_bound = profile.sigma2.rowwise().sum().maxCoeff();
  const double bound = std::pow(std::sqrt(row_bound) + std::sqrt(colmax), 2);
  const double scale = std::max({1.0, std::abs(bmin), std::abs(bmax), bound});
  const double tol = 1e-2 * opts.tol * scale;
  const auto solver = [&](double lambda, const RealVector& warm) {
    return detail::solve_flat(problem, lambda, warm, 1e-12 * std::max(1.0, std::abs(lambda)));
  };
  // In negated units the lower problem is an upper one with edge -lambda_min.
  const double cur = sign * best.certificate_value;
  std::optional<std::pair<double, RealVector>> ok;
  if (auto u = solver(cur, res.x)) {
    ok.emplace(cur, std::move(*u));
  } else {
    ok = detail::flat_far_point(problem, cur, 1e-12);
  }
  if (ok) {
    const double fail = side == Side::Upper ? bmax : -(bmax + bound + 1.0);
    const auto bis = detail::descend_flat(fail, ok->first, ok->second, tol, solver);
    EdgeResult alt = result_at(profile, problem.v_of(bis.x), side, res.iterations + bis.iterations);
    if (better(alt, best, side)) best = alt;
  } else {
    best.converged = !res.exhausted;
    best.note = "flat solution search failed";
  }
  const RealVector v = best.certificate.matrix().diagonal().real().cwiseAbs();
  best.boundary_escape = res.escaped || v.maxCoeff() > 1e6;
  if (side == Side::Upper) {
    const RealVector s = profile.sigma2.transpose() * best.certificate.matrix().diagonal().real();
    best.boundary_escape = best.boundary_escape || s.maxCoeff() > 1.0 - 1e-7;
  }
  return best;
}

}  // namespace

VarianceProfile profile_of(const model::FreeModel& model) {
  if (!model::is_diagonal_compatible(model)) {
    throw Error(ErrorCode::InvalidArgument, "model does not preserve the diagonal subalgebras");
  }
  VarianceProfile p;
  p.sigma2 = RealMatrix::Zero(model.d(), model.m());
  for (const auto& a : model.coeffs()) p.sigma2 += a.cwiseAbs2();
  p.bdiag = model.shift().matrix().diagonal().real();
  return p;
}

RealVector diag_objective(const VarianceProfile& profile, const RealVector& v, Side side) {
  profile.check();
  if (static_cast<std::size_t>(v.size()) != profile.d()) {
    throw Error(ErrorCode::ShapeMismatch, "v must have length d");
  }
  if (!v.allFinite()) throw Error(ErrorCode::NonFinite, "v has non-finite entries");
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (side == Side::Upper && !(v(i) > 0.0)) {
      throw Error(ErrorCode::Infeasible, infeasible_message("v_i > 0", i));
    }
    if (side == Side::Lower && !(v(i) < 0.0)) {
      throw Error(ErrorCode::Infeasible, infeasible_message("v_i < 0", i));
    }
  }
  const RealVector s = profile.sigma2.transpose() * v;
  if (side == Side::Upper) {
    for (Eigen::Index j = 0; j < s.size(); ++j) {
      if (!(s(j) < 1.0)) {
        throw Error(ErrorCode::Infeasible, infeasible_message("sum_k sigma2_kj v_k < 1", j));
      }
    }
  }
  return raw_objective(profile, v, s);
}

DiagonalIterate diag_iterate(const VarianceProfile& profile, const RealVector& v, Side side) {
  DiagonalIterate it;
  it.v = v;
  try {
    it.objective = diag_objective(profile, v, side);
    it.feasible = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Infeasible) throw;
  }
  return it;
}

EdgeResult diag_upper_edge(const VarianceProfile& profile, const SolverOptions& opts) {
  return solve(profile, Side::Upper, opts);
}

EdgeResult diag_lower_edge(const VarianceProfile& profile, const SolverOptions& opts) {
  return solve(profile, Side::Lower, opts);
}

}  // namespace freeedge::diagonal
