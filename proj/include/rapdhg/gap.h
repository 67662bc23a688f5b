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

#ifndef RAPDHG_GAP_H_
#define RAPDHG_GAP_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rapdhg/linalg.h"
#include "rapdhg/operator.h"
#include "rapdhg/problem.h"

namespace rapdhg {

// Raised when a gap needs a prox or conjugate the problem does not provide.
class GapUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Smoothing weights in [0, +inf]; +inf is the IEEE infinity.
struct SmoothParams {
  double beta_x = 1.0;
  double beta_y = 1.0;

  static SmoothParams Scalar(double beta) { return {beta, beta}; }
  // Throws std::invalid_argument on negative or NaN components.
  void Validate() const;
};

struct GapReport {
  double value = 0.0;
  // Inner maximizers; absent when the weight is 0 (the supremum need not be
  // attained). Equal to the center when the weight is +inf.
  std::optional<Vec> maximizer_primal;
  std::optional<Vec> maximizer_dual;
};

// G_beta(z; center) with the V-norm weights of `steps`.
GapReport smoothed_gap(const SaddleProblem& p, const PrimalDualPoint& z,
                       const PrimalDualPoint& center, const SmoothParams& beta,
                       const VNormParams& steps);
GapReport self_centered_gap(const SaddleProblem& p, const PrimalDualPoint& z,
                            const SmoothParams& beta, const VNormParams& steps);

// Throws GapUnavailable if smoothed_gap cannot be evaluated with `beta`.
void check_gap_available(const SaddleProblem& p, const SmoothParams& beta);

struct KktResidual {
  double primal = 0.0;
  double dual = 0.0;
  double total() const;
};
// ||z - T z||_V split into its primal and dual parts.
KktResidual kkt_residual(const SaddleProblem& p, const PrimalDualPoint& z,
                         const StepSizes& steps);
KktResidual residual_between(const PrimalDualPoint& z,
                             const PrimalDualPoint& tz,
                             const VNormParams& steps);

// max over test points (x', y') of L(x, y') - L(x', y) at z = (x, y).
double restricted_gap(const SaddleProblem& p, const PrimalDualPoint& z,
                      const std::vector<PrimalDualPoint>& test_points);

}  // namespace rapdhg

#endif  // RAPDHG_GAP_H_
