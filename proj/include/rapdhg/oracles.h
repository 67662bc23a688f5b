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

#ifndef RAPDHG_ORACLES_H_
#define RAPDHG_ORACLES_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rapdhg/gap.h"
#include "rapdhg/linalg.h"
#include "rapdhg/operator.h"
#include "rapdhg/problem.h"
#include "rapdhg/problems.h"
#include "rapdhg/solver.h"

namespace rapdhg {

class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Largest eigenvalue modulus of the toy iteration matrix, excluding 1.
double toy_exact_rate(const ToyProblem& toy);

// exp of the least-squares slope of log(values[k]) against k over the tail
// that remains after dropping `head_fraction` of the samples. Nonpositive
// values are ignored.
double fit_contraction(const std::vector<double>& values,
                       double head_fraction = 0.5);

struct EstimatorWindow {
  // Fraction of leading iterates ignored.
  double skip_fraction = 0.0;
  // Iterates closer than this to the reference are skipped.
  double min_dist = 1e-9;
};

// min_k G_beta(z_k; z*) / (dist_V(z_k, z*)^2 / 2).
double estimate_qeb(const std::vector<PrimalDualPoint>& iterates,
                    const PrimalDualPoint& z_star, const SmoothParams& beta,
                    const SaddleProblem& p, const StepSizes& steps,
                    const EstimatorWindow& window = {});

// min_k ||z_k - T z_k||_V / dist_V(z_k, z*).
double estimate_msr(const std::vector<PrimalDualPoint>& iterates,
                    const PrimalDualPoint& z_star, const SaddleProblem& p,
                    const StepSizes& steps,
                    const EstimatorWindow& window = {});

// Smoothed gap of an LP centered at the saddle point z*, with scalar beta,
// written out block by block without prox calls.
double lp_gap_closed_form(const LPDescription& lp, const PrimalDualPoint& z,
                          const PrimalDualPoint& z_star, double beta,
                          const VNormParams& steps);

class ReferenceUnconverged : public std::runtime_error {
 public:
  ReferenceUnconverged(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct ReferenceOptions {
  double tol = 1e-12;
  std::int64_t max_iters = 1000000;
  AdaptiveOptions adaptive;
  // When set, solutions are cached there by problem fingerprint.
  std::optional<std::filesystem::path> cache_dir;
};

struct ReferenceSolution {
  PrimalDualPoint z;
  double residual = 0.0;
  std::int64_t iterations = 0;
  bool from_cache = false;
};

// Adaptive restarts until ||z - T z||_V <= tol. Throws ReferenceUnconverged.
ReferenceSolution reference_solve(const SaddleProblem& p,
                                  const StepSizes& steps,
                                  const ReferenceOptions& options = {});

}  // namespace rapdhg

#endif  // RAPDHG_ORACLES_H_
