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

#include "rapdhg/operator.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rapdhg {

StepSizes::StepSizes(double tau, double sigma, double a_norm,
                     double lipschitz_f, double lipschitz_gstar)
    : tau_(tau), sigma_(sigma) {
  if (!(tau > 0.0) || !(sigma > 0.0) || !std::isfinite(tau) ||
      !std::isfinite(sigma)) {
    throw std::invalid_argument("StepSizes: tau and sigma must be positive");
  }
  if (!(a_norm >= 0.0) || !(lipschitz_f >= 0.0) || !(lipschitz_gstar >= 0.0)) {
    throw std::invalid_argument("StepSizes: constants must be nonnegative");
  }
  gamma_ = sigma * tau * a_norm * a_norm;
  alpha_f_ = tau * lipschitz_f / 2.0;
  alpha_g_ = sigma * lipschitz_gstar / 2.0;
  if (!(gamma_ < 1.0) || !(alpha_f_ < 1.0) || !(alpha_g_ < 1.0)) {
    throw std::invalid_argument(
        "StepSizes: need sigma tau ||A||^2 < 1, tau L_f / 2 < 1 and "
        "sigma L_g* / 2 < 1 (gamma = " +
        std::to_string(gamma_) + ")");
  }
}

StepSizes StepSizes::ForProblem(const SaddleProblem& p, double tau,
                                double sigma) {
  return StepSizes(tau, sigma, p.A.norm_bound(), p.lipschitz_f(),
                   p.lipschitz_gstar());
}

StepSizes default_steps(double a_norm, double lipschitz_f,
                        double lipschitz_gstar, const StepOptions& options) {
  if (!(a_norm > 0.0)) {
    throw std::invalid_argument("default_steps: ||A|| must be positive");
  }
  if (options.strategy == StepStrategy::kStronglyConvex) {
    if (!(options.mu_f > 0.0) || !(options.mu_gstar > 0.0)) {
      throw std::invalid_argument(
          "default_steps: strongly convex strategy needs mu_f, mu_g* > 0");
    }
    double tau = std::sqrt(options.mu_gstar / options.mu_f) / a_norm;
    double sigma = std::sqrt(options.mu_f / options.mu_gstar) / a_norm;
    if (sigma * tau * a_norm * a_norm >= 1.0 - 1e-12) {
      tau *= std::sqrt(0.999);
      sigma *= std::sqrt(0.999);
    }
    return StepSizes(tau, sigma, a_norm, lipschitz_f, lipschitz_gstar);
  }
  if (!(options.gamma > 0.0) || !(options.gamma < 1.0)) {
    throw std::invalid_argument("default_steps: target gamma must be in (0,1)");
  }
  const double c = std::sqrt(options.gamma);
  double tau = c / a_norm;
  double sigma = c / a_norm;
  if (tau * lipschitz_f / 2.0 >= 1.0) {
    tau = 1.9 / lipschitz_f;
    sigma = options.gamma / (tau * a_norm * a_norm);
  }
  if (sigma * lipschitz_gstar / 2.0 >= 1.0) {
    sigma = 1.9 / lipschitz_gstar;
  }
  return StepSizes(tau, sigma, a_norm, lipschitz_f, lipschitz_gstar);
}

StepSizes default_steps(const SaddleProblem& p, const StepOptions& options) {
  return default_steps(p.A.norm_bound(), p.lipschitz_f(), p.lipschitz_gstar(),
                       options);
}

void pdhg_step(const SaddleProblem& p, const PrimalDualPoint& z,
               const StepSizes& steps, StepResult& out) {
  if (z.x.size() != p.n() || z.y.size() != p.m()) {
    throw std::invalid_argument("pdhg_step: point dimension mismatch");
  }
  const double tau = steps.tau();
  const double sigma = steps.sigma();
  Vec aty = p.A.Adjoint(z.y);
  Vec vx = z.x - tau * aty;
  if (p.f2) vx -= tau * p.f2->Grad(z.x);
  out.shadow.x = prox(*p.f, vx, tau);
  Vec vy = z.y + sigma * p.A.Apply(out.shadow.x);
  if (p.g2star) vy -= sigma * p.g2star->Grad(z.y);
  out.shadow.y = prox(*p.gstar, vy, sigma);
  out.next.x = out.shadow.x - tau * p.A.Adjoint(out.shadow.y - z.y);
  out.next.y = out.shadow.y;
}

StepResult pdhg_step(const SaddleProblem& p, const PrimalDualPoint& z,
                     const StepSizes& steps) {
  StepResult out;
  pdhg_step(p, z, steps, out);
  return out;
}

}  // namespace rapdhg
