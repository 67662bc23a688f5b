// Copyright 2026 The rapdhg Authors
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

#include "rapdhg/gap.h"

#include <algorithm>
#include <cmath>

namespace rapdhg {
namespace {

const ProxFunction& PrimalBlock(const SaddleProblem& p) {
  if (p.f2) {
    if (!p.f_folded) {
      throw GapUnavailable("smoothed gap unavailable: smooth primal term " +
                           p.f2->name() + " has no prox-capable folding");
    }
    return *p.f_folded;
  }
  return *p.f;
}

const ProxFunction& DualBlock(const SaddleProblem& p) {
  if (p.g2star) {
    if (!p.gstar_folded) {
      throw GapUnavailable("smoothed gap unavailable: smooth dual term " +
                           p.g2star->name() + " has no prox-capable folding");
    }
    return *p.gstar_folded;
  }
  return *p.gstar;
}

double Conj(const ProxFunction& fn, const Vec& w) {
  std::optional<double> v = fn.Conjugate(w);
  if (!v) {
    throw GapUnavailable("smoothed gap unavailable: no closed-form conjugate "
                         "for " +
                         fn.name());
  }
  return *v;
}

}  // namespace

void SmoothParams::Validate() const {
  if (!(beta_x >= 0.0) || !(beta_y >= 0.0)) {
    throw std::invalid_argument("SmoothParams: weights must be in [0, +inf]");
  }
}

void check_gap_available(const SaddleProblem& p, const SmoothParams& beta) {
  beta.Validate();
  const ProxFunction& f = PrimalBlock(p);
  const ProxFunction& g = DualBlock(p);
  if (beta.beta_y == 0.0 && !g.Conjugate(Vec::Zero(p.m()))) {
    throw GapUnavailable("smoothed gap unavailable: no conjugate for " +
                         g.name());
  }
  if (beta.beta_x == 0.0 && !f.Conjugate(Vec::Zero(p.n()))) {
    throw GapUnavailable("smoothed gap unavailable: no conjugate for " +
                         f.name());
  }
}

GapReport smoothed_gap(const SaddleProblem& p, const PrimalDualPoint& z,
                       const PrimalDualPoint& center, const SmoothParams& beta,
                       const VNormParams& steps) {
  beta.Validate();
  if (z.x.size() != p.n() || z.y.size() != p.m() ||
      center.x.size() != p.n() || center.y.size() != p.m()) {
    throw std::invalid_argument("smoothed_gap: dimension mismatch");
  }
  const ProxFunction& f = PrimalBlock(p);
  const ProxFunction& g = DualBlock(p);
  const double tau = steps.tau();
  const double sigma = steps.sigma();
  GapReport report;

  // sup_y' f(x) + <Ax, y'> - g*(y') - beta_y / (2 sigma) ||y' - center.y||^2
  const double fx = f.Eval(z.x);
  const Vec ax = p.A.Apply(z.x);
  double primal_block;
  if (beta.beta_y == 0.0) {
    primal_block = ext_add(fx, Conj(g, ax));
  } else if (std::isinf(beta.beta_y)) {
    primal_block = ext_add(fx, ext_add(ax.dot(center.y), -g.Eval(center.y)));
    report.maximizer_dual = center.y;
  } else {
    const double t = sigma / beta.beta_y;
    Vec y_hat = prox(g, center.y + t * ax, t);
    const double gy = g.Eval(y_hat);
    primal_block =
        ext_add(fx, ext_add(-gy, ax.dot(y_hat) -
                                     beta.beta_y / (2.0 * sigma) *
                                         (y_hat - center.y).squaredNorm()));
    report.maximizer_dual = std::move(y_hat);
  }

  // sup_x' g*(y) - f(x') - <Ax', y> - beta_x / (2 tau) ||x' - center.x||^2
  const double gy = g.Eval(z.y);
  const Vec aty = p.A.Adjoint(z.y);
  double dual_block;
  if (beta.beta_x == 0.0) {
    dual_block = ext_add(gy, Conj(f, -aty));
  } else if (std::isinf(beta.beta_x)) {
    dual_block = ext_add(gy, ext_add(-f.Eval(center.x), -aty.dot(center.x)));
    report.maximizer_primal = center.x;
  } else {
    const double t = tau / beta.beta_x;
    Vec x_hat = prox(f, center.x - t * aty, t);
    const double fxh = f.Eval(x_hat);
    dual_block =
        ext_add(gy, ext_add(-fxh, -aty.dot(x_hat) -
                                      beta.beta_x / (2.0 * tau) *
                                          (x_hat - center.x).squaredNorm()));
    report.maximizer_primal = std::move(x_hat);
  }
  report.value = ext_add(primal_block, dual_block);
  return report;
}

GapReport self_centered_gap(const SaddleProblem& p, const PrimalDualPoint& z,
                            const SmoothParams& beta,
                            const VNormParams& steps) {
  return smoothed_gap(p, z, z, beta, steps);
}

double KktResidual::total() const {
  return std::sqrt(primal * primal + dual * dual);
}

KktResidual residual_between(const PrimalDualPoint& z,
                             const PrimalDualPoint& tz,
                             const VNormParams& steps) {
  return {(z.x - tz.x).norm() / std::sqrt(steps.tau()),
          (z.y - tz.y).norm() / std::sqrt(steps.sigma())};
}

KktResidual kkt_residual(const SaddleProblem& p, const PrimalDualPoint& z,
                         const StepSizes& steps) {
  const StepResult s = pdhg_step(p, z, steps);
  return residual_between(z, s.next, steps);
}

double restricted_gap(const SaddleProblem& p, const PrimalDualPoint& z,
                      const std::vector<PrimalDualPoint>& test_points) {
  if (test_points.empty()) {
    throw std::invalid_argument("restricted_gap: empty test set");
  }
  const double fz = p.PrimalValue(z.x);
  const double gz = p.DualValue(z.y);
  if (std::isinf(fz) || std::isinf(gz)) return kInf;
  const Vec ax = p.A.Apply(z.x);
  const Vec aty = p.A.Adjoint(z.y);
  double best = -kInf;
  for (const PrimalDualPoint& t : test_points) {
    const double ft = p.PrimalValue(t.x);
    const double gt = p.DualValue(t.y);
    if (std::isinf(ft) || std::isinf(gt)) {
      throw std::invalid_argument("restricted_gap: infeasible test point");
    }
    const double v = (fz + ax.dot(t.y) - gt) - (ft + aty.dot(t.x) - gz);
    best = std::max(best, v);
  }
  return best;
}

}  // namespace rapdhg
