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

#include "freeedge/edges.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "detail/objective.hpp"
#include "detail/spectral_engine.hpp"
#include "freeedge/cauchy.hpp"

namespace freeedge::edges {
namespace {

using detail::RealMatrix;
using detail::RealVector;
using linalg::ComplexMatrix;
using model::FreeModel;

double min_eig(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
  return es.eigenvalues()(0);
}

bool strictly_positive(const ComplexMatrix& m) { return min_eig(m) > linalg::positivity_margin(m); }

/// Inverse of a strictly positive definite z from its eigendecomposition.
std::optional<ComplexMatrix> pd_inverse(const ComplexMatrix& z) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(z);
  if (es.info() != Eigen::Success) return std::nullopt;
  const RealVector& ev = es.eigenvalues();
  if (!(ev(0) > linalg::positivity_margin(z))) return std::nullopt;
  const auto& v = es.eigenvectors();
  return ComplexMatrix(v * ev.cwiseInverse().cast<linalg::Complex>().asDiagonal() * v.adjoint());
}

ComplexMatrix one_minus_phi_star(const FreeModel& model, const ComplexMatrix& z) {
  const auto m = static_cast<Eigen::Index>(model.m());
  return ComplexMatrix::Identity(m, m) - model::apply_phi_star(model, z);
}

/// Gradient matrix of z -> tr(W h(z)): -z^{-1} W z^{-1} + Phi(R Phi*(W) R).
ComplexMatrix h_pullback(const FreeModel& model, const detail::ObjectiveParts& parts,
                         const ComplexMatrix& w) {
  const ComplexMatrix& r = parts.resolvent;
  ComplexMatrix g = -parts.z_inv * w * parts.z_inv;
  g += model::apply_phi(model, r * model::apply_phi_star(model, w) * r);
  return 0.5 * (g + g.adjoint());
}

/// z > 0, 1 - Phi*(z) > 0, F = h.
class UpperProblem final : public detail::SpectralProblem {
 public:
  explicit UpperProblem(const FreeModel& model) : model_(model) {}

  std::size_t param_dim() const override { return model_.d() * model_.d(); }
  std::size_t value_dim() const override { return model_.d(); }

  std::optional<ComplexMatrix> value(const RealVector& x) const override {
    const auto parts = feasible_parts(x);
    if (!parts) return std::nullopt;
    return parts->h;
  }

  RealVector pullback(const RealVector& x, const ComplexMatrix& w) const override {
    const auto parts = detail::evaluate_objective(model_, z_of(x));
    if (!parts) return RealVector::Zero(x.size());
    return linalg::to_real(h_pullback(model_, *parts, w));
  }

  double barrier(const RealVector& x) const override {
    const ComplexMatrix s = one_minus_phi_star(model_, z_of(x));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s, Eigen::EigenvaluesOnly);
    const RealVector& ev = es.eigenvalues();
    if (!(ev(0) > 0.0)) return std::numeric_limits<double>::infinity();
    return -ev.array().log().sum();
  }

  RealVector barrier_gradient(const RealVector& x) const override {
    const auto r = detail::try_inverse(one_minus_phi_star(model_, z_of(x)));
    if (!r) return RealVector::Zero(x.size());
    const ComplexMatrix g = model::apply_phi(model_, *r);
    return linalg::to_real(0.5 * (g + g.adjoint()));
  }

  std::optional<RealVector> far_start(double lambda) const override {
    if (!(lambda > 0.0)) return std::nullopt;
    const auto d = static_cast<Eigen::Index>(model_.d());
    return linalg::to_real(ComplexMatrix::Identity(d, d) / lambda);
  }

  ComplexMatrix z_of(const RealVector& x) const { return linalg::from_real(x, model_.d()); }

 private:
  std::optional<detail::ObjectiveParts> feasible_parts(const RealVector& x) const {
    const ComplexMatrix z = z_of(x);
    if (!strictly_positive(z)) return std::nullopt;
    if (!strictly_positive(one_minus_phi_star(model_, z))) return std::nullopt;
    return detail::evaluate_objective(model_, z);
  }

  const FreeModel& model_;
};

/// z < 0, F = -h, so that lambda_max(F) = -lambda_min(h).
class LowerProblem final : public detail::SpectralProblem {
 public:
  explicit LowerProblem(const FreeModel& model) : model_(model) {}

  std::size_t param_dim() const override { return model_.d() * model_.d(); }
  std::size_t value_dim() const override { return model_.d(); }

  std::optional<ComplexMatrix> value(const RealVector& x) const override {
    const ComplexMatrix z = linalg::from_real(x, model_.d());
    if (!strictly_positive(-z)) return std::nullopt;
    const auto parts = detail::evaluate_objective(model_, z);
    if (!parts) return std::nullopt;
    return ComplexMatrix(-parts->h);
  }

  RealVector pullback(const RealVector& x, const ComplexMatrix& w) const override {
    const auto parts = detail::evaluate_objective(model_, linalg::from_real(x, model_.d()));
    if (!parts) return RealVector::Zero(x.size());
    return -linalg::to_real(h_pullback(model_, *parts, w));
  }

  std::optional<RealVector> far_start(double lambda) const override {
    if (!(lambda > 0.0)) return std::nullopt;
    const auto d = static_cast<Eigen::Index>(model_.d());
    return linalg::to_real(ComplexMatrix::Identity(d, d) / -lambda);
  }

 private:
  const FreeModel& model_;
};

/// z > 0, F = a0 + z^{-1} + sum a_i z a_i.
class LehnerProblem final : public detail::SpectralProblem {
 public:
  LehnerProblem(const HermitianMatrix& a0, const std::vector<HermitianMatrix>& a)
      : a0_(a0), a_(a) {}

  std::size_t param_dim() const override { return a0_.dim() * a0_.dim(); }
  std::size_t value_dim() const override { return a0_.dim(); }

  std::optional<ComplexMatrix> value(const RealVector& x) const override {
    const ComplexMatrix z = linalg::from_real(x, a0_.dim());
    const auto zi = pd_inverse(z);
    if (!zi) return std::nullopt;
    ComplexMatrix f = a0_.matrix() + *zi;
    for (const auto& ai : a_) f += ai.matrix() * z * ai.matrix();
    return ComplexMatrix(0.5 * (f + f.adjoint()));
  }

  RealVector pullback(const RealVector& x, const ComplexMatrix& w) const override {
    const auto zi = pd_inverse(linalg::from_real(x, a0_.dim()));
    if (!zi) return RealVector::Zero(x.size());
    ComplexMatrix g = -*zi * w * *zi;
    for (const auto& ai : a_) g += ai.matrix() * w * ai.matrix();
    return linalg::to_real(0.5 * (g + g.adjoint()));
  }

  // DF[E] = -z^{-1} E z^{-1} + sum a_i E a_i. Each basis matrix E is
  // alpha e_i e_j* + conj(alpha) e_j e_i*, so every term is two outer products.
  std::optional<RealMatrix> image_jacobian(const RealVector& x) const override {
    const auto r = static_cast<Eigen::Index>(a0_.dim());
    const auto zi = pd_inverse(linalg::from_real(x, a0_.dim()));
    if (!zi) return std::nullopt;
    RealMatrix jac(x.size(), x.size());
    ComplexMatrix col(r, r);
    auto term = [&](Eigen::Index i, Eigen::Index j, linalg::Complex alpha) {
      col = -alpha * zi->col(i) * zi->row(j);
      for (const auto& ai : a_) col += alpha * ai.matrix().col(i) * ai.matrix().row(j);
      if (i != j) col += col.adjoint().eval();
      return linalg::to_real(col);
    };
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < r; ++i) jac.col(k++) = term(i, i, 1.0);
    const double s = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = i + 1; j < r; ++j) {
        jac.col(k++) = term(i, j, linalg::Complex(s, 0.0));
        jac.col(k++) = term(i, j, linalg::Complex(0.0, s));
      }
    }
    return jac;
  }

  std::optional<RealVector> far_start(double lambda) const override {
    if (!(lambda > 0.0)) return std::nullopt;
    const auto r = static_cast<Eigen::Index>(a0_.dim());
    return linalg::to_real(ComplexMatrix::Identity(r, r) / lambda);
  }

 private:
  const HermitianMatrix& a0_;
  const std::vector<HermitianMatrix>& a_;
};

detail::EngineOptions engine_options(const SolverOptions& opts) {
  detail::EngineOptions e;
  e.max_iter = opts.max_iter;
  return e;
}

/// Near-boundary diagnostics for an upper certificate.
bool near_boundary(const FreeModel& model, const ComplexMatrix& z) {
  const double zn = std::max(1.0, z.norm());
  return z.norm() > 1e6 || min_eig(z) < 1e-7 * zn ||
         min_eig(one_minus_phi_star(model, z)) < 1e-7;
}

EdgeResult from_certificate(const FreeModel& model, const ComplexMatrix& z, Side side, int iters) {
  EdgeResult r;
  r.side = side;
  r.method = Method::Variational;
  r.certificate = HermitianMatrix::symmetrized(z);
  const auto [cv, flat] = detail::certificate_of(model, r.certificate.matrix(), side);
  r.certificate_value = cv;
  r.flatness_residual = flat;
  r.value = cv;
  r.iterations = iters;
  return r;
}

/// Density matrix W with DF*[W] ~ 0 and tr W = 1: the least singular
/// direction of the pullback operator.
ComplexMatrix stationary_weights(const detail::SpectralProblem& p, const RealVector& x) {
  const auto n = static_cast<Eigen::Index>(p.param_dim());
  RealMatrix a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    RealVector e = RealVector::Zero(n);
    e(j) = 1.0;
    a.col(j) = p.pullback(x, p.image_matrix(e));
  }
  Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeFullV);
  RealVector w = svd.matrixV().col(n - 1);
  const auto k = static_cast<Eigen::Index>(p.value_dim());
  const double tr = p.image_coords(ComplexMatrix::Identity(k, k)).dot(w);
  if (std::abs(tr) < 1e-12) return ComplexMatrix::Identity(k, k) / static_cast<double>(k);
  return p.image_matrix(w / tr);
}

bool feasible(const FreeModel& model, const ComplexMatrix& z, Side side) {
  if (side == Side::Lower) return strictly_positive(-z);
  return strictly_positive(z) && strictly_positive(one_minus_phi_star(model, z));
}

/// Best certificate on the ray {t z}: lower certificates stay feasible for
/// every t > 0, upper ones for t below the Phi*(z) < 1 boundary. Catches
/// optima that escape to infinity or to the boundary, where the solvers stop
/// a little short. Returns the improved result, or nothing.
std::optional<EdgeResult> extend_along_ray(const FreeModel& model, const EdgeResult& base) {
  const Side side = base.side;
  const ComplexMatrix& z = base.certificate.matrix();
  const double sign = side == Side::Upper ? 1.0 : -1.0;  // minimize sign * value
  auto eval = [&](double t) -> std::optional<double> {
    const ComplexMatrix zt = t * z;
    if (!feasible(model, zt, side)) return std::nullopt;
    try {
      return sign * detail::certificate_of(model, zt, side).first;
    } catch (const Error&) {
      return std::nullopt;
    }
  };

  std::vector<double> ts{1.0};
  if (side == Side::Lower) {
    for (int k = 1; k <= 60; ++k) ts.push_back(std::ldexp(1.0, k));
  } else {
    for (int k = 1; k <= 60; ++k) ts.push_back(std::ldexp(1.0, -k));
    const double pmax =
        linalg::eig_extremes(HermitianMatrix::symmetrized(model::apply_phi_star(model, z))).max;
    if (pmax > 0.0) {
      const double tmax = 1.0 / pmax;
      for (int k = 1; k <= 52; ++k) ts.push_back(tmax * (1.0 - std::ldexp(1.0, -k)));
    }
  }
  std::sort(ts.begin(), ts.end());
  std::vector<double> vals(ts.size(), std::numeric_limits<double>::infinity());
  std::size_t arg = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (const auto v = eval(ts[i])) vals[i] = *v;
    if (vals[i] < vals[arg]) arg = i;
  }
  const auto base_v = eval(1.0);
  if (!base_v) return std::nullopt;

  // Golden refinement between the grid neighbours of the best sample.
  double lo = ts[arg == 0 ? 0 : arg - 1];
  double hi = ts[arg + 1 < ts.size() ? arg + 1 : arg];
  double best_t = ts[arg];
  double best_v = vals[arg];
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 80 && hi - lo > 1e-15 * hi; ++it) {
    const double c = hi - r * (hi - lo);
    const double e = lo + r * (hi - lo);
    const double fc = eval(c).value_or(std::numeric_limits<double>::infinity());
    const double fe = eval(e).value_or(std::numeric_limits<double>::infinity());
    if (fc < best_v) {
      best_v = fc;
      best_t = c;
    }
    if (fe < best_v) {
      best_v = fe;
      best_t = e;
    }
    if (fc < fe) {
      hi = e;
    } else {
      lo = c;
    }
  }
  if (!(best_v < *base_v - 1e-14 * std::max(1.0, std::abs(*base_v)))) return std::nullopt;
  EdgeResult out = from_certificate(model, best_t * z, side, base.iterations);
  out.value = side == Side::Upper ? std::min(base.value, out.certificate_value)
                                  : std::max(base.value, out.certificate_value);
  out.converged = base.converged;
  out.boundary_escape = true;
  out.note = "certificate extended along its ray; optimum not attained";
  return out;
}

}  // namespace

HermitianMatrix objective_h(const FreeModel& model, const HermitianMatrix& z) {
  if (z.dim() != model.d()) throw Error(ErrorCode::ShapeMismatch, "z must be d x d");
  if (!detail::try_inverse(z.matrix())) throw Error(ErrorCode::SingularZ, "z is singular");
  const auto parts = detail::evaluate_objective(model, z.matrix());
  if (!parts) throw Error(ErrorCode::SingularResolvent, "1 - Phi*(z) is singular");
  return HermitianMatrix::symmetrized(parts->h);
}

double eval_certificate(const FreeModel& model, const HermitianMatrix& z, Side side) {
  if (z.dim() != model.d()) throw Error(ErrorCode::ShapeMismatch, "z must be d x d");
  if (side == Side::Upper) {
    if (!linalg::is_positive_definite(z)) {
      throw Error(ErrorCode::Infeasible, "upper certificate must satisfy z > 0");
    }
    if (!linalg::is_positive_definite(model::phi_star(model, z).scaled(-1.0).shifted(1.0))) {
      throw Error(ErrorCode::Infeasible, "upper certificate must satisfy Phi*(z) < 1");
    }
  } else if (!linalg::is_negative_definite(z)) {
    throw Error(ErrorCode::Infeasible, "lower certificate must satisfy z < 0");
  }
  return detail::certificate_of(model, z.matrix(), side).first;
}

EdgeResult upper_edge(const FreeModel& model, const SolverOptions& opts) {
  if (model.is_trivial()) return detail::trivial_edge(model, Side::Upper, Method::Variational);

  const auto d = static_cast<Eigen::Index>(model.d());
  const double pmax = linalg::eig_extremes(model::phi_star(model, HermitianMatrix::identity(model.d()))).max;
  const double t0 = 0.5 / std::max(1.0, pmax);
  UpperProblem problem(model);
  const RealVector x0 = linalg::to_real(ComplexMatrix::Identity(d, d) * t0);

  const auto res = detail::minimize_lambda_max(problem, x0, engine_options(opts));
  EdgeResult best = from_certificate(model, problem.z_of(res.x), Side::Upper, res.iterations);

  if (!res.polished) {
    // Fall back on the flat solution G(lambda) just above the spectrum, which
    // approaches the infimum even when it is not attained.
    try {
      const EdgeResult alt = cauchy::edge_from_cauchy(model, Side::Upper, opts);
      if (alt.certificate_value < best.certificate_value) {
        best = from_certificate(model, alt.certificate.matrix(), Side::Upper,
                                res.iterations + alt.iterations);
        best.note = "flat continuation above the spectrum";
      }
    } catch (const Error& e) {
      best.converged = !res.exhausted;
      best.note = std::string("continuation fallback failed: ") + e.what();
    }
    best.boundary_escape = res.escaped || near_boundary(model, best.certificate.matrix());
  }
  return extend_along_ray(model, best).value_or(best);
}

EdgeResult lower_edge(const FreeModel& model, const SolverOptions& opts) {
  if (model.is_trivial()) return detail::trivial_edge(model, Side::Lower, Method::Variational);

  const auto d = static_cast<Eigen::Index>(model.d());
  const auto ext = linalg::eig_extremes(model.shift());
  const double bound = model::norm_bound_xxstar(model);
  const double scale = std::max({1.0, std::abs(ext.min), std::abs(ext.max), bound});

  // Any z < 0 is a lower bound; z = -1 is the baseline.
  EdgeResult best = from_certificate(model, -ComplexMatrix::Identity(d, d), Side::Lower, 0);

  // Continuation in lambda from below the spectrum of b, keeping G(lambda) < 0.
  double lam = ext.min - 1.0;
  cauchy::CauchyPoint pt = cauchy::attempt_G(model, lam, opts);
  int evaluations = 1;
  for (int k = 0; k < 60 && !(pt.converged && pt.sign == cauchy::SignCheck::Negative); ++k) {
    lam -= scale * std::ldexp(1.0, k);
    pt = cauchy::attempt_G(model, lam, opts);
    ++evaluations;
  }
  if (!(pt.converged && pt.sign == cauchy::SignCheck::Negative)) {
    best.converged = false;
    best.note = "no negative definite flat solution below the spectrum of b";
    return best;
  }
  double step = std::max(0.25 * (ext.min + bound - lam), 1e-3 * scale);
  const double min_step = 1e-2 * opts.tol * scale;
  while (step > min_step && evaluations < 400) {
    const double next = lam + step;
    cauchy::CauchyPoint cand = cauchy::attempt_G(model, next, opts, &pt.G);
    ++evaluations;
    if (cand.converged && cand.sign == cauchy::SignCheck::Negative) {
      lam = next;
      pt = std::move(cand);
      step *= 2.0;
    } else {
      step *= 0.5;
    }
  }

  EdgeResult cont = from_certificate(model, pt.G, Side::Lower, evaluations);
  cont.value = lam;
  if (cont.certificate_value > best.certificate_value) best = cont;
  best.value = std::max(lam, best.certificate_value);

  // Flatness polish on the negated problem for a certificate at the optimum.
  LowerProblem problem(model);
  const RealVector x = linalg::to_real(best.certificate.matrix());
  const double lscale = std::max(1.0, std::abs(best.value));
  if (const auto pol =
          detail::polish_flat(problem, x, -best.value, stationary_weights(problem, x), lscale)) {
    const ComplexMatrix z = linalg::from_real(pol->x, model.d());
    if (strictly_positive(-z)) {
      EdgeResult refined = from_certificate(model, z, Side::Lower, evaluations + pol->iterations);
      if (refined.certificate_value >= best.certificate_value - 1e-12 * lscale) {
        refined.value = std::max(refined.certificate_value, lam);
        return extend_along_ray(model, refined).value_or(refined);
      }
    }
  }
  const ComplexMatrix& z = best.certificate.matrix();
  best.boundary_escape = z.norm() > 1e6 || min_eig(-z) < 1e-7 * std::max(1.0, z.norm());
  if (best.note.empty()) best.note = "continuation value, flatness polish not accepted";
  return extend_along_ray(model, best).value_or(best);
}

EdgeResult lehner_selfadjoint_max(const HermitianMatrix& a0, const std::vector<HermitianMatrix>& a,
                                  const SolverOptions& opts) {
  const std::size_t r = a0.dim();
  for (const auto& ai : a) {
    if (ai.dim() != r) throw Error(ErrorCode::ShapeMismatch, "coefficients must share a dimension");
  }
  LehnerProblem problem(a0, a);
  const auto ri = static_cast<Eigen::Index>(r);
  const double a0max = linalg::eig_extremes(a0).max;
  ComplexMatrix sq = ComplexMatrix::Zero(ri, ri);
  for (const auto& ai : a) sq += ai.matrix() * ai.matrix();
  const double sqmax = linalg::eig_extremes(HermitianMatrix::symmetrized(sq)).max;

  auto finish = [&](const RealVector& x, Method method, int iters) {
    EdgeResult res;
    res.method = method;
    res.side = Side::Upper;
    const ComplexMatrix z = linalg::from_real(x, r);
    res.certificate = HermitianMatrix::symmetrized(z);
    const HermitianMatrix f = HermitianMatrix::symmetrized(*problem.value(x));
    res.certificate_value = linalg::eig_extremes(f).max;
    res.flatness_residual = f.shifted(-res.certificate_value).norm();
    res.value = res.certificate_value;
    res.iterations = iters;
    return res;
  };

  if (sqmax == 0.0) {
    const double t = 1e12 * std::max(1.0, a0.norm());
    EdgeResult res = finish(linalg::to_real(ComplexMatrix::Identity(ri, ri) / t), Method::Variational, 0);
    res.value = a0max;
    res.boundary_escape = true;
    res.note = "all a_i vanish: lambda_max(a0), optimum escapes to z = 0";
    return res;
  }

  // Continuation on flat solutions f(z) = lambda * 1, z > 0, from above
  // |x| <= lambda_max(a0) + 2 |sum a_i^2|^{1/2} down towards lambda_max(a0).
  const double tol = 1e-2 * opts.tol * std::max(1.0, std::abs(a0max) + std::sqrt(sqmax));
  const auto solver = [&](double lambda, const RealVector& warm) {
    return detail::solve_flat(problem, lambda, warm, 1e-12 * std::max(1.0, std::abs(lambda)));
  };
  if (const auto far = detail::flat_far_point(problem, a0max + 2.0 * std::sqrt(sqmax), 1e-12)) {
    const auto cont = detail::descend_flat(a0max, far->first, far->second, tol, solver);
    EdgeResult res = finish(cont.x, Method::Variational, cont.iterations);
    const ComplexMatrix& z = res.certificate.matrix();
    res.boundary_escape = z.norm() > 1e6 || min_eig(z) < 1e-7 * std::max(1.0, z.norm());
    return res;
  }

  // No flat point found: the barrier engine still yields a rigorous bound.
  const RealVector x0 = linalg::to_real(ComplexMatrix::Identity(ri, ri) / std::sqrt(sqmax));
  const auto res = detail::minimize_lambda_max(problem, x0, engine_options(opts));
  EdgeResult best = finish(res.x, Method::Variational, res.iterations);
  best.converged = res.polished;
  best.boundary_escape = res.escaped;
  if (!res.polished) best.note = "flat solution search failed; barrier bound only";
  return best;
}

EdgeResult dilated_cross_check(const FreeModel& model, const SolverOptions& opts) {
  const auto d = static_cast<Eigen::Index>(model.d());
  const auto m = static_cast<Eigen::Index>(model.m());
  const auto ext = linalg::eig_extremes(model.shift());
  const double c = 1.0 + std::max(0.0, -ext.min);
  const HermitianMatrix a0 = linalg::psd_sqrt(model.shift().shifted(c));

  // Block order (d, m, d).
  const Eigen::Index r = 2 * d + m;
  ComplexMatrix t0 = ComplexMatrix::Zero(r, r);
  t0.block(0, d + m, d, d) = a0.matrix().adjoint();
  t0.block(d + m, 0, d, d) = a0.matrix();
  std::vector<HermitianMatrix> ta;
  ta.reserve(model.n());
  for (const auto& ai : model.coeffs()) {
    ComplexMatrix t = ComplexMatrix::Zero(r, r);
    t.block(d, d + m, m, d) = ai.adjoint();
    t.block(d + m, d, d, m) = ai;
    ta.push_back(HermitianMatrix::symmetrized(t));
  }
  // The edge of x x* + b is L^2 - c, so L needs relative accuracy tol / (2 L^2).
  SolverOptions inner = opts;
  inner.tol = opts.tol / std::max(1.0, 2.0 * std::sqrt(ext.max + c));
  EdgeResult res = lehner_selfadjoint_max(HermitianMatrix::symmetrized(t0), ta, inner);
  res.method = Method::Dilation;
  res.value = res.value * res.value - c;
  res.certificate_value = res.certificate_value * res.certificate_value - c;
  return res;
}

}  // namespace freeedge::edges
