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

#include "freeedge/cauchy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "detail/objective.hpp"

namespace freeedge::cauchy {
namespace {

using linalg::HermitianMatrix;
using model::FreeModel;

std::optional<ComplexMatrix> residual_of(const FreeModel& model, const ComplexMatrix& z,
                                         Complex lambda) {
  auto parts = detail::evaluate_objective(model, z);
  if (!parts) return std::nullopt;
  ComplexMatrix r = std::move(parts->h);
  r.diagonal().array() -= lambda;
  return r;
}

bool is_real(Complex lambda) { return lambda.imag() == 0.0; }

void keep_hermitian(ComplexMatrix& z, Complex lambda) {
  if (is_real(lambda)) z = 0.5 * (z + z.adjoint()).eval();
}

/// One damped step of Z <- (lambda - b - Phi((1 - Phi*(Z))^{-1}))^{-1}.
std::optional<ComplexMatrix> fixed_point_map(const FreeModel& model, const ComplexMatrix& z,
                                             Complex lambda) {
  const auto m = static_cast<Eigen::Index>(model.m());
  const auto r = detail::try_inverse(ComplexMatrix::Identity(m, m) -
                                     model::apply_phi_star(model, z));
  if (!r) return std::nullopt;
  ComplexMatrix target = -model.shift().matrix() - model::apply_phi(model, *r);
  target.diagonal().array() += lambda;
  return detail::try_inverse(target);
}

/// Complex Jacobian of Z -> h(Z) in column-major vectorization.
ComplexMatrix jacobian(const FreeModel& model, const detail::ObjectiveParts& parts) {
  const auto d = static_cast<Eigen::Index>(model.d());
  const auto m = static_cast<Eigen::Index>(model.m());
  const ComplexMatrix& zi = parts.z_inv;
  const ComplexMatrix& res = parts.resolvent;
  ComplexMatrix jac(d * d, d * d);
  ComplexMatrix e = ComplexMatrix::Zero(d, d);
  for (Eigen::Index q = 0; q < d; ++q) {
    for (Eigen::Index p = 0; p < d; ++p) {
      e(p, q) = 1.0;
      ComplexMatrix col = -zi.col(p) * zi.row(q);
      const ComplexMatrix inner = res * model::apply_phi_star(model, e) * res;
      col += model::apply_phi(model, inner);
      jac.col(p + q * d) = Eigen::Map<const Eigen::VectorXcd>(col.data(), d * d);
      e(p, q) = 0.0;
    }
  }
  (void)m;
  return jac;
}

ComplexMatrix initial_point(const FreeModel& model, Complex lambda) {
  const auto d = static_cast<Eigen::Index>(model.d());
  const ComplexMatrix eye = ComplexMatrix::Identity(d, d);
  if (!is_real(lambda)) return eye / lambda;
  const auto ext = linalg::eig_extremes(model.shift());
  const double l = lambda.real();
  if (l > ext.max) return eye / (l - ext.max);
  if (l < ext.min) return eye / (l - ext.min);
  ComplexMatrix shifted = -model.shift().matrix();
  shifted.diagonal().array() += lambda;
  if (auto inv = detail::try_inverse(shifted)) return *inv;
  return eye / (std::abs(l) + 1.0);
}

SignCheck classify(const ComplexMatrix& g, Complex lambda) {
  if (is_real(lambda)) {
    const HermitianMatrix h = HermitianMatrix::symmetrized(g);
    if (linalg::is_positive_definite(h)) return SignCheck::Positive;
    if (linalg::is_negative_definite(h)) return SignCheck::Negative;
    return SignCheck::Indefinite;
  }
  const ComplexMatrix im = (g - g.adjoint()) / Complex(0.0, 2.0);
  const auto ext = linalg::eig_extremes(HermitianMatrix::symmetrized(im));
  const bool ok = lambda.imag() > 0.0 ? ext.max < 0.0 : ext.min > 0.0;
  return ok ? SignCheck::HerglotzOk : SignCheck::HerglotzViolated;
}

void finish(const FreeModel& model, CauchyPoint& pt) {
  const auto m = static_cast<Eigen::Index>(model.m());
  const auto h = detail::try_inverse(ComplexMatrix::Identity(m, m) -
                                     model::apply_phi_star(model, pt.G));
  if (!h) {
    pt.converged = false;
    return;
  }
  pt.H = *h;
  pt.sign = classify(pt.G, pt.lambda);
}

/// Upper side: G > 0 and H > 0. Lower side: G < 0.
bool definite_outside(const FreeModel& model, const CauchyPoint& pt, Side side) {
  if (!pt.converged) return false;
  if (side == Side::Lower) return pt.sign == SignCheck::Negative;
  if (pt.sign != SignCheck::Positive) return false;
  return linalg::is_positive_definite(HermitianMatrix::symmetrized(pt.H)) &&
         linalg::is_positive_definite(HermitianMatrix::symmetrized(
             ComplexMatrix::Identity(model.m(), model.m()) -
             model::apply_phi_star(model, pt.G)));
}

EdgeResult make_result(const FreeModel& model, Side side, double value, const CauchyPoint& pt,
                       int iterations) {
  EdgeResult r;
  r.side = side;
  r.method = Method::Cauchy;
  r.value = value;
  r.certificate = HermitianMatrix::symmetrized(pt.G);
  const auto [cv, flat] = detail::certificate_of(model, r.certificate.matrix(), side);
  r.certificate_value = cv;
  r.flatness_residual = flat;
  r.iterations = iterations;
  return r;
}

}  // namespace

std::string_view to_string(SignCheck sign) {
  switch (sign) {
    case SignCheck::Positive: return "positive";
    case SignCheck::Negative: return "negative";
    case SignCheck::Indefinite: return "indefinite";
    case SignCheck::HerglotzOk: return "herglotz-ok";
    case SignCheck::HerglotzViolated: return "herglotz-violated";
  }
  return "unknown";
}

ComplexMatrix fixed_point_residual(const FreeModel& model, const ComplexMatrix& z,
                                   Complex lambda) {
  if (!detail::try_inverse(z)) throw Error(ErrorCode::SingularZ, "G is singular");
  const auto r = residual_of(model, z, lambda);
  if (!r) throw Error(ErrorCode::SingularResolvent, "1 - Phi*(G) is singular");
  return *r;
}

CauchyPoint attempt_G(const FreeModel& model, Complex lambda, const SolverOptions& opts,
                      const ComplexMatrix* warm) {
  CauchyPoint pt;
  pt.lambda = lambda;
  const auto d = static_cast<Eigen::Index>(model.d());
  const double tol = opts.fp_tol * std::max(1.0, std::abs(lambda));

  if (model.is_trivial()) {
    ComplexMatrix shifted = -model.shift().matrix();
    shifted.diagonal().array() += lambda;
    const auto g = detail::try_inverse(shifted);
    if (!g) return pt;
    pt.G = *g;
    keep_hermitian(pt.G, lambda);
    pt.residual = residual_of(model, pt.G, lambda).value_or(ComplexMatrix()).norm();
    pt.converged = true;
    finish(model, pt);
    return pt;
  }

  ComplexMatrix z = warm ? *warm : initial_point(model, lambda);
  keep_hermitian(z, lambda);
  auto res = residual_of(model, z, lambda);
  if (!res) return pt;
  double rnorm = res->norm();

  // Damped fixed-point phase; omega halves whenever the residual grows.
  const double switch_at = 1e-4 * std::max(1.0, std::abs(lambda));
  double omega = 1.0;
  int it = 0;
  for (; it < opts.fp_max_iter && rnorm > switch_at && omega > 1e-6; ++it) {
    const auto t = fixed_point_map(model, z, lambda);
    if (!t) {
      omega *= 0.5;
      continue;
    }
    ComplexMatrix cand = (1.0 - omega) * z + omega * *t;
    keep_hermitian(cand, lambda);
    const auto rc = residual_of(model, cand, lambda);
    if (rc && rc->norm() < rnorm) {
      z = std::move(cand);
      rnorm = rc->norm();
      omega = std::min(1.0, 1.25 * omega);
    } else {
      omega *= 0.5;
    }
  }

  // Newton polish on the vectorized residual.
  for (int k = 0; k < 60 && rnorm > tol; ++k, ++it) {
    const auto parts = detail::evaluate_objective(model, z);
    if (!parts) break;
    ComplexMatrix r = parts->h;
    r.diagonal().array() -= lambda;
    const ComplexMatrix jac = jacobian(model, *parts);
    const Eigen::VectorXcd rhs = -Eigen::Map<const Eigen::VectorXcd>(r.data(), d * d);
    const Eigen::VectorXcd step = jac.partialPivLu().solve(rhs);
    if (!step.allFinite()) break;
    const ComplexMatrix dz = Eigen::Map<const ComplexMatrix>(step.data(), d, d);
    double alpha = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 30; ++ls, alpha *= 0.5) {
      ComplexMatrix cand = z + alpha * dz;
      keep_hermitian(cand, lambda);
      const auto rc = residual_of(model, cand, lambda);
      if (rc && rc->norm() < (1.0 - 1e-4 * alpha) * rnorm) {
        z = std::move(cand);
        rnorm = rc->norm();
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }

  pt.G = z;
  pt.residual = rnorm;
  pt.iterations = it;
  pt.converged = rnorm <= tol;
  if (pt.converged) finish(model, pt);
  return pt;
}

namespace {

// Walks lambda + t * dir from a far point down to t = 0, warm-starting every
// solve from the previous one. dir points away from the spectrum.
CauchyPoint continue_G(const FreeModel& model, Complex lambda, Complex dir, double scale,
                       const SolverOptions& opts) {
  double t = scale;
  CauchyPoint pt = attempt_G(model, lambda + t * dir, opts);
  for (int k = 0; !pt.converged && k < 30; ++k) {
    t *= 2.0;
    pt = attempt_G(model, lambda + t * dir, opts);
  }
  if (!pt.converged) return pt;
  double step = 0.5 * t;
  for (int k = 0; k < 400 && t > 0.0; ++k) {
    const double next = std::max(0.0, t - step);
    CauchyPoint cand = attempt_G(model, lambda + next * dir, opts, &pt.G);
    if (cand.converged && cand.sign != SignCheck::HerglotzViolated) {
      t = next;
      pt = std::move(cand);
      step *= 2.0;
    } else {
      step *= 0.5;
      if (step < 1e-13 * scale) break;
    }
  }
  if (t > 0.0) pt.converged = false;
  return pt;
}

}  // namespace

CauchyPoint solve_G(const FreeModel& model, Complex lambda, const SolverOptions& opts) {
  CauchyPoint pt = attempt_G(model, lambda, opts);
  if (!pt.converged && !model.is_trivial()) {
    // The cold start can stall near the edges; retry by continuation.
    const auto ext = linalg::eig_extremes(model.shift());
    const double bound = model::norm_bound_xxstar(model);
    const double scale = std::max({1.0, std::abs(ext.min), std::abs(ext.max), bound});
    std::vector<Complex> dirs;
    if (lambda.imag() != 0.0) {
      dirs.emplace_back(0.0, lambda.imag() > 0.0 ? 1.0 : -1.0);
    } else if (lambda.real() < 0.5 * (ext.min + ext.max + bound)) {
      dirs = {Complex(-1.0, 0.0), Complex(1.0, 0.0)};
    } else {
      dirs = {Complex(1.0, 0.0), Complex(-1.0, 0.0)};
    }
    const int cold_iterations = pt.iterations;
    for (Complex dir : dirs) {
      CauchyPoint c = continue_G(model, lambda, dir, scale, opts);
      if (c.converged) {
        pt = std::move(c);
        break;
      }
    }
    if (!pt.converged) pt.iterations = cold_iterations;
  }
  if (!pt.converged) {
    std::ostringstream msg;
    msg << "fixed-point iteration did not converge at lambda = " << lambda.real()
        << (lambda.imag() < 0 ? "-" : "+") << std::abs(lambda.imag()) << "i (residual "
        << pt.residual << " after " << pt.iterations
        << " iterations); lambda is likely inside the spectrum";
    throw Error(ErrorCode::NonConvergence, msg.str());
  }
  if (pt.sign == SignCheck::HerglotzViolated) {
    throw Error(ErrorCode::BranchViolation,
                "converged solution violates the Herglotz sign condition");
  }
  return pt;
}

ComplexMatrix series_G(const FreeModel& model, Complex lambda, int order) {
  if (order < 0 || order > 500) {
    throw Error(ErrorCode::InvalidArgument, "series order must lie in [0, 500]");
  }
  const auto d = static_cast<Eigen::Index>(model.d());
  const linalg::RealVector b_eigs = linalg::eigenvalues(model.shift());
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < b_eigs.size(); ++k) gap = std::min(gap, std::abs(lambda - b_eigs(k)));
  const double bound = model::norm_bound_xxstar(model);
  if (!(gap > 0.0) || !(bound < gap)) {
    std::ostringstream msg;
    msg << "|(lambda - b)^{-1}| * |x x*| bound = " << bound / gap << " >= 1";
    throw Error(ErrorCode::SeriesDiverges, msg.str());
  }

  ComplexMatrix g = -model.shift().matrix();
  g.diagonal().array() += lambda;
  g = g.inverse().eval();

  const ComplexMatrix phi_one =
      model::apply_phi(model, ComplexMatrix::Identity(model.m(), model.m()));
  std::vector<ComplexMatrix> c{ComplexMatrix::Identity(d, d)};
  std::vector<ComplexMatrix> dk;     // D_k
  std::vector<ComplexMatrix> p_of;   // Phi*(g C_l)
  std::vector<ComplexMatrix> q_of;   // Phi(D_l) g
  c.reserve(order + 1);
  for (int k = 0; k < order; ++k) {
    p_of.push_back(model::apply_phi_star(model, g * c[k]));
    ComplexMatrix dnew = p_of[k];
    for (int l = 0; l < k; ++l) dnew += p_of[l] * dk[k - 1 - l];
    dk.push_back(std::move(dnew));
    q_of.push_back(model::apply_phi(model, dk[k]) * g);

    ComplexMatrix cnext = phi_one * g * c[k];
    for (int l = 0; l < k; ++l) cnext += q_of[l] * c[k - 1 - l];
    c.push_back(std::move(cnext));
  }
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& ck : c) sum += ck;
  return g * sum;
}

EdgeResult edge_from_cauchy(const FreeModel& model, Side side, const SolverOptions& opts) {
  if (model.is_trivial()) return detail::trivial_edge(model, side, Method::Cauchy);

  const auto ext = linalg::eig_extremes(model.shift());
  const double bound = model::norm_bound_xxstar(model);
  const double scale = std::max({1.0, std::abs(ext.min), std::abs(ext.max), bound});
  int evaluations = 0;

  auto outside = [&](double lambda, const ComplexMatrix* warm) {
    ++evaluations;
    CauchyPoint pt = attempt_G(model, lambda, opts, warm);
    const bool ok = definite_outside(model, pt, side);
    return std::make_pair(ok, std::move(pt));
  };

  // The edge lies in [b_max, b_max + |xx*|] (upper) or [b_min, b_min + |xx*|]
  // (lower); the definite-signed solution exists exactly on the far side.
  const double sign = side == Side::Upper ? 1.0 : -1.0;
  double inside = side == Side::Upper ? ext.max : ext.min + bound;
  double far = side == Side::Upper ? ext.max + bound + 1e-3 * scale : ext.min - 1e-3 * scale;
  auto [ok, pt] = outside(far, nullptr);
  for (int k = 0; !ok && k < 40; ++k) {
    far += sign * scale * std::ldexp(1.0, k);
    std::tie(ok, pt) = outside(far, nullptr);
  }
  if (!ok) {
    throw Error(ErrorCode::BracketNotFound,
                std::string("no definite solution found on the ") +
                    std::string(to_string(side)) + " side");
  }

  // Walk towards the edge: double the step on success, halve it on failure.
  // A failure only says the jump was too long or crossed the edge, so the
  // inner end of the bracket never moves.
  const double width_tol = 1e-2 * opts.tol * std::max(1.0, std::abs(far));
  double step = 0.5 * (inside - far);
  while (std::abs(step) > width_tol && evaluations < 400) {
    const double next = far + step;
    if (next == far) break;
    auto [next_ok, next_pt] = outside(next, &pt.G);
    if (next_ok) {
      far = next;
      pt = std::move(next_pt);
      step = 2.0 * step;
      if (std::abs(step) > 0.5 * std::abs(inside - far)) step = 0.5 * (inside - far);
    } else {
      step *= 0.5;
    }
  }
  EdgeResult r = make_result(model, side, far, pt, evaluations);
  return r;
}

}  // namespace freeedge::cauchy
