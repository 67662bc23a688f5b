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

#ifndef RAPDHG_OPERATOR_H_
#define RAPDHG_OPERATOR_H_

#include "rapdhg/linalg.h"
#include "rapdhg/problem.h"

namespace rapdhg {

// Primal and dual steps with the derived constants
// gamma = sigma tau ||A||^2, alpha_f = tau L_f / 2, alpha_g = sigma L_g* / 2.
class StepSizes {
 public:
  // Throws std::invalid_argument unless gamma, alpha_f, alpha_g are all < 1.
  StepSizes(double tau, double sigma, double a_norm, double lipschitz_f = 0.0,
            double lipschitz_gstar = 0.0);
  static StepSizes ForProblem(const SaddleProblem& p, double tau,
                              double sigma);

  double tau() const { return tau_; }
  double sigma() const { return sigma_; }
  double gamma() const { return gamma_; }
  double alpha_f() const { return alpha_f_; }
  double alpha_g() const { return alpha_g_; }
  VNormParams v_norm_params() const { return VNormParams(tau_, sigma_); }
  operator VNormParams() const { return v_norm_params(); }

 private:
  double tau_, sigma_, gamma_, alpha_f_, alpha_g_;
};

enum class StepStrategy { kBalanced, kStronglyConvex };

struct StepOptions {
  StepStrategy strategy = StepStrategy::kBalanced;
  // Target sigma tau ||A||^2 of the balanced strategy.
  double gamma = 0.9;
  // Required by the strongly convex strategy.
  double mu_f = 0.0;
  double mu_gstar = 0.0;
};

StepSizes default_steps(double a_norm, double lipschitz_f,
                        double lipschitz_gstar, const StepOptions& options);
StepSizes default_steps(const SaddleProblem& p, const StepOptions& options);

// One application of T. `next` is (x+, y+) and `shadow` is (xbar, ybar).
struct StepResult {
  PrimalDualPoint next;
  PrimalDualPoint shadow;
};
StepResult pdhg_step(const SaddleProblem& p, const PrimalDualPoint& z,
                     const StepSizes& steps);

// In-place variant reusing the buffers of `out`.
void pdhg_step(const SaddleProblem& p, const PrimalDualPoint& z,
               const StepSizes& steps, StepResult& out);

}  // namespace rapdhg

#endif  // RAPDHG_OPERATOR_H_
