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

#include "detail/spectral_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace freeedge::detail {
namespace {

using linalg::Complex;

struct Smoothed {
  double phi;
  double lmax;
  ComplexMatrix rho;
};

std::optional<Smoothed> smoothed(const SpectralProblem& p, const RealVector& x, double mu,
                                 double t) {
  const auto f = p.value(x);
  if (!f) return std::nullopt;
  double bar = 0.0;
  if (t > 0.0) {
    bar = p.barrier(x);
    if (!std::isfinite(bar)) return std::nullopt;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(*f);
  if (es.info() != Eigen::Success) return std::nullopt;
  const RealVector& ev = es.eigenvalues();
  const double lmax = ev.maxCoeff();
  RealVector w = ((ev.array() - lmax) / mu).exp().matrix();
  const double sum = w.sum();
  w /= sum;
  Smoothed s;
  s.lmax = lmax;
  s.phi = lmax + mu * std::log(sum) + t * bar;
  s.rho = es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  return s;
}

std::optional<RealVector> smoothed_gradient(const SpectralProblem& p, const RealVector& x,
                                            double mu, double t) {
  const auto s = smoothed(p, x, mu, t);
  if (!s) return std::nullopt;
  RealVector g = p.pullback(x, s->rho);
  if (t > 0.0) g += t * p.barrier_gradient(x);
  return g;
}

double step_size(const RealVector& x) {
  const double s = x.size() ? x.cwiseAbs().maxCoeff() : 1.0;
  return 1e-6 * std::max(1e-2, s);
}

/// Solves (H + tau I) p = -g for the smallest tau making H + tau I positive definite.
RealVector newton_direction(RealMatrix h, const RealVector& g) {
  h = 0.5 * (h + h.transpose());
  const double diag_scale = std::max(1e-300, h.diagonal().cwiseAbs().maxCoeff());
  double tau = 0.0;
  for (int attempt = 0; attempt < 60; ++attempt) {
    RealMatrix shifted = h;
    shifted.diagonal().array() += tau;
    Eigen::LLT<RealMatrix> llt(shifted);
    if (llt.info() == Eigen::Success) {
      RealVector dir = llt.solve(-g);
      if (dir.allFinite()) return dir;
    }
    tau = tau == 0.0 ? 1e-10 * diag_scale : tau * 10.0;
  }
  return -g;
}

}  // namespace

std::optional<double> lambda_max_at(const SpectralProblem& p, const RealVector& x) {
  const auto f = p.value(x);
  if (!f) return std::nullopt;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(*f, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) return std::nullopt;
  return es.eigenvalues().maxCoeff();
}

RealMatrix fd_jacobian(const std::function<std::optional<RealVector>(const RealVector&)>& f,
                       const RealVector& x, const RealVector& fx) {
  const Eigen::Index n = x.size();
  RealMatrix jac(fx.size(), n);
  const double base = step_size(x);
  for (Eigen::Index j = 0; j < n; ++j) {
    double h = base;
    bool done = false;
    for (int shrink = 0; shrink < 8 && !done; ++shrink, h *= 0.1) {
      RealVector xp = x;
      RealVector xm = x;
      xp(j) += h;
      xm(j) -= h;
      const auto fp = f(xp);
      const auto fm = f(xm);
      if (fp && fm) {
        jac.col(j) = (*fp - *fm) / (2.0 * h);
        done = true;
      } else if (fp) {
        jac.col(j) = (*fp - fx) / h;
        done = true;
      } else if (fm) {
        jac.col(j) = (fx - *fm) / h;
        done = true;
      }
    }
    if (!done) jac.col(j).setZero();
  }
  return jac;
}

MinimizeResult minimize_lambda_max(const SpectralProblem& p, const RealVector& x0,
                                   const EngineOptions& opts) {
  MinimizeResult result;
  const auto v0 = lambda_max_at(p, x0);
  if (!v0) throw Error(ErrorCode::Infeasible, "initial point outside the domain");
  const double scale = std::max(1.0, std::abs(*v0));

  RealVector x = x0;
  result.x = x0;
  result.value = *v0;
  const auto k = static_cast<Eigen::Index>(p.value_dim());
  result.weights = ComplexMatrix::Identity(k, k) / static_cast<double>(k);

  double mu = opts.mu_initial * scale;
  double t = opts.barrier_initial * scale;
  int total = 0;

  auto record = [&](const RealVector& cand, double lmax) {
    if (lmax < result.value) {
      result.value = lmax;
      result.x = cand;
    }
  };

  while (true) {
    // Newton on the smoothed, barrier-augmented objective at fixed (mu, t).
    for (int it = 0; it < 50 && total < opts.max_iter; ++it, ++total) {
      const auto s = smoothed(p, x, mu, t);
      if (!s) break;
      record(x, s->lmax);
      result.weights = s->rho;
      RealVector g = p.pullback(x, s->rho);
      if (t > 0.0) g += t * p.barrier_gradient(x);
      const auto grad_fn = [&](const RealVector& y) { return smoothed_gradient(p, y, mu, t); };
      const RealMatrix hess = fd_jacobian(grad_fn, x, g);
      const RealVector dir = newton_direction(hess, g);
      const double slope = g.dot(dir);
      if (!(slope < 0.0) || -slope < 1e-14 * scale) break;

      double alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        const RealVector cand = x + alpha * dir;
        const auto sc = smoothed(p, cand, mu, t);
        if (sc && sc->phi <= s->phi + 1e-4 * alpha * slope) {
          x = cand;
          record(x, sc->lmax);
          moved = true;
          break;
        }
      }
      if (!moved) break;
      if (x.norm() > opts.escape_norm) {
        result.escaped = true;
        break;
      }
      if ((alpha * dir).norm() < 1e-14 * (1.0 + x.norm())) break;
    }
    result.iterations = total;
    if (result.escaped) break;

    if (mu <= opts.polish_below * scale) {
      const auto lm = lambda_max_at(p, x);
      const auto s = smoothed(p, x, mu, 0.0);
      if (lm && s) {
        const auto pol = polish_flat(p, x, *lm, s->rho, scale);
        if (pol) {
          const auto lp = lambda_max_at(p, pol->x);
          if (lp && *lp <= result.value + 1e-12 * scale) {
            result.x = pol->x;
            result.value = *lp;
            result.weights = pol->weights;
            result.polished = true;
            break;
          }
        }
      }
    }
    if (total >= opts.max_iter) {
      result.exhausted = true;
      break;
    }
    if (mu <= opts.mu_min * scale) break;
    mu *= opts.decay;
    t *= opts.decay;
  }
  return result;
}

std::optional<PolishResult> polish_flat(const SpectralProblem& p, const RealVector& x0,
                                        double lambda0, const ComplexMatrix& w0, double scale) {
  const auto n = static_cast<Eigen::Index>(p.param_dim());
  const auto kdim = static_cast<Eigen::Index>(p.image_dim());
  if (n != kdim) return std::nullopt;
  const auto k = static_cast<Eigen::Index>(p.value_dim());
  const RealVector eye = p.image_coords(ComplexMatrix::Identity(k, k));

  // Unknowns y = (x, lambda, w).
  const Eigen::Index dim = 2 * n + 1;
  RealVector y(dim);
  y.head(n) = x0;
  y(n) = lambda0;
  y.tail(n) = p.image_coords(w0);

  auto residual = [&](const RealVector& yy) -> std::optional<RealVector> {
    const RealVector xx = yy.head(n);
    const auto f = p.value(xx);
    if (!f) return std::nullopt;
    RealVector r(dim);
    r.head(n) = p.image_coords(*f) - yy(n) * eye;
    r.segment(n, n) = p.pullback(xx, p.image_matrix(yy.tail(n)));
    r(2 * n) = eye.dot(yy.tail(n)) - 1.0;
    return r;
  };

  auto r = residual(y);
  if (!r) return std::nullopt;
  const double grad_scale =
      std::max(1.0, p.pullback(x0, ComplexMatrix::Identity(k, k) / static_cast<double>(k)).norm());
  const double target = 1e-13 * std::max(scale, grad_scale);

  int it = 0;
  int stalls = 0;
  for (; it < 20 && r->norm() > target; ++it) {
    RealMatrix jac = RealMatrix::Zero(dim, dim);
    // x columns by finite differences of (F(x), DF(x)^*[W]).
    const RealVector w = y.tail(n);
    const ComplexMatrix wm = p.image_matrix(w);
    auto fx = [&](const RealVector& xx) -> std::optional<RealVector> {
      const auto f = p.value(xx);
      if (!f) return std::nullopt;
      RealVector out(2 * n);
      out.head(n) = p.image_coords(*f);
      out.tail(n) = p.pullback(xx, wm);
      return out;
    };
    const RealVector xcur = y.head(n);
    const auto base = fx(xcur);
    if (!base) return std::nullopt;
    jac.topLeftCorner(2 * n, n) = fd_jacobian(fx, xcur, *base);
    jac.block(0, n, n, 1) = -eye;
    for (Eigen::Index j = 0; j < n; ++j) {
      RealVector e = RealVector::Zero(n);
      e(j) = 1.0;
      jac.block(n, n + 1 + j, n, 1) = p.pullback(xcur, p.image_matrix(e));
    }
    jac.block(2 * n, n + 1, 1, n) = eye.transpose();

    const RealVector step = jac.fullPivLu().solve(-*r);
    if (!step.allFinite()) return std::nullopt;
    double alpha = 1.0;
    bool moved = false;
    const double before = r->norm();
    for (int ls = 0; ls < 30; ++ls, alpha *= 0.5) {
      const RealVector cand = y + alpha * step;
      const auto rc = residual(cand);
      if (rc && rc->norm() < (1.0 - 1e-4 * alpha) * before) {
        y = cand;
        r = rc;
        moved = true;
        break;
      }
    }
    if (!moved) break;
    if (r->norm() > 0.5 * before && ++stalls >= 4) break;
  }

  const double flat = r->head(n).norm();
  const double stat = r->segment(n, n).norm();
  if (!(flat <= 1e-9 * scale) || !(stat <= 1e-8 * grad_scale) || !(std::abs((*r)(2 * n)) < 1e-9)) {
    return std::nullopt;
  }
  const ComplexMatrix wm = p.image_matrix(y.tail(n));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (wm + wm.adjoint()),
                                                  Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-6) return std::nullopt;
  return PolishResult{y.head(n), y(n), wm, r->norm(), it};
}

std::optional<RealVector> solve_flat(const SpectralProblem& p, double lambda, const RealVector& x0,
                                     double tol, int max_iter) {
  const auto n = static_cast<Eigen::Index>(p.param_dim());
  if (n != static_cast<Eigen::Index>(p.image_dim())) return std::nullopt;
  const auto k = static_cast<Eigen::Index>(p.value_dim());
  const RealVector eye = p.image_coords(ComplexMatrix::Identity(k, k));
  auto residual = [&](const RealVector& xx) -> std::optional<RealVector> {
    const auto f = p.value(xx);
    if (!f) return std::nullopt;
    return RealVector(p.image_coords(*f) - lambda * eye);
  };
  RealVector x = x0;
  auto r = residual(x);
  if (!r) return std::nullopt;
  int stalls = 0;
  for (int it = 0; it < max_iter; ++it) {
    if (r->norm() <= tol) return x;
    auto fmap = [&](const RealVector& xx) -> std::optional<RealVector> {
      const auto f = p.value(xx);
      if (!f) return std::nullopt;
      return p.image_coords(*f);
    };
    const auto analytic = p.image_jacobian(x);
    const RealMatrix jac = analytic ? *analytic : fd_jacobian(fmap, x, *r + lambda * eye);
    const RealVector step = jac.fullPivLu().solve(-*r);
    if (!step.allFinite()) return std::nullopt;
    double alpha = 1.0;
    bool moved = false;
    const double before = r->norm();
    for (int ls = 0; ls < 40; ++ls, alpha *= 0.5) {
      const RealVector cand = x + alpha * step;
      const auto rc = residual(cand);
      if (rc && rc->norm() < (1.0 - 1e-4 * alpha) * before) {
        x = cand;
        r = rc;
        moved = true;
        break;
      }
    }
    if (!moved) return std::nullopt;
    // Slow linear progress means the iteration is not in a basin of a root.
    if (r->norm() > 0.5 * before && ++stalls >= 8) return std::nullopt;
  }
  if (r->norm() <= tol) return x;
  return std::nullopt;
}

DescendResult descend_flat(double lambda_fail, double lambda_ok, RealVector x_ok, double tol,
                         const FlatSolver& solver) {
  int it = 0;
  double step = 0.5 * (lambda_ok - lambda_fail);
  while (step > tol && it < 400) {
    ++it;
    const double next = std::max(lambda_ok - step, lambda_fail);
    if (next >= lambda_ok) break;
    std::optional<RealVector> x;
    if (next > lambda_fail) x = solver(next, x_ok);
    if (x) {
      lambda_ok = next;
      x_ok = std::move(*x);
      step = std::min(2.0 * step, 0.5 * (lambda_ok - lambda_fail));
    } else {
      step *= 0.5;
    }
  }
  return {lambda_ok, std::move(x_ok), it};
}

std::optional<std::pair<double, RealVector>> flat_far_point(const SpectralProblem& p,
                                                            double lambda_guess, double tol) {
  double step = 1.0 + std::abs(lambda_guess);
  for (int k = 0; k < 40; ++k, step *= 2.0) {
    const double lambda = lambda_guess + step;
    const auto start = p.far_start(lambda);
    if (!start) return std::nullopt;
    if (auto x = solve_flat(p, lambda, *start, tol * std::max(1.0, std::abs(lambda)))) {
      return std::make_pair(lambda, std::move(*x));
    }
  }
  return std::nullopt;
}

}  // namespace freeedge::detail
