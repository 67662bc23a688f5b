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

#ifndef RAPDHG_SOLVER_H_
#define RAPDHG_SOLVER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rapdhg/gap.h"
#include "rapdhg/linalg.h"
#include "rapdhg/operator.h"
#include "rapdhg/problem.h"

namespace rapdhg {

enum class StopKind {
  kMaxIters,  // run the full budget
  kSelfGap,   // G_(0, delta)(zbar, zbar) <= tol, delta the dual residual
  kKkt,       // ||z - T z||_V <= tol
  kDistance,  // ||z - reference||_V <= tol
};

struct StoppingRule {
  StopKind kind = StopKind::kSelfGap;
  double tol = 1e-8;
  std::int64_t max_iters = 10000;
  std::optional<PrimalDualPoint> reference;
};

struct IterateRecord {
  std::int64_t iter = 0;
  std::optional<double> dist_v;
  double self_gap = 0.0;
  double kkt_primal = 0.0;
  double kkt_dual = 0.0;
  bool restart = false;
};

// Records with strictly increasing iteration indices.
class IterateLog {
 public:
  // Throws std::invalid_argument if rec.iter does not increase.
  void Append(const IterateRecord& rec);
  const std::vector<IterateRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

 private:
  std::vector<IterateRecord> records_;
};

struct LogOptions {
  // Record every `every` iterations (and at restarts and the last step);
  // 0 disables logging.
  std::int64_t every = 1;
  // Smoothing of the logged self-centered gap of the shadow iterate.
  SmoothParams gap_beta = SmoothParams::Scalar(0.01);
  bool log_gap = true;
  // When present, dist_v is ||z_k - reference||_V.
  std::optional<PrimalDualPoint> reference;
};

// Called after iteration k with the state z_k and the shadow zbar_k.
using IterateObserver = std::function<void(
    std::int64_t k, const PrimalDualPoint& z, const PrimalDualPoint& z_bar)>;

struct SolveOptions {
  StoppingRule stop;
  LogOptions log;
  IterateObserver observer;
};

struct SolverState {
  PrimalDualPoint z;
  PrimalDualPoint z_bar;
  PrimalDualPoint z_tilde;
  std::int64_t k_global = 0;
  std::int64_t s = 0;
  double beta_s = 0.0;
  double gap_at_restart = 0.0;
};

struct RestartEvent {
  std::int64_t iter = 0;
  bool averaged_adopted = false;
  double beta = 0.0;
  double gap = 0.0;
};

struct SolveResult {
  // The point certified by the stopping rule: the shadow iterate for kSelfGap,
  // otherwise the state iterate. The last state iterate when unconverged.
  PrimalDualPoint solution;
  bool converged = false;
  std::int64_t iterations = 0;
  KktResidual last_residual;
  SolverState state;
  IterateLog log;
  std::vector<RestartEvent> restarts;
};

SolveResult run_pdhg(const SaddleProblem& p, const PrimalDualPoint& z0,
                     const StepSizes& steps, const SolveOptions& options);

// Mean of the shadow iterates zbar_1..zbar_K started from z0.
PrimalDualPoint run_apdhg(const SaddleProblem& p, const PrimalDualPoint& z0,
                          const StepSizes& steps, std::int64_t K);

// Restarts APDHG every K iterations for at most `epochs` epochs. One log
// record per epoch; the stopping rule is checked at epoch boundaries and its
// max_iters bounds the total number of inner iterations.
SolveResult run_rapdhg(const SaddleProblem& p, const PrimalDualPoint& z0,
                       const StepSizes& steps, std::int64_t K,
                       std::int64_t epochs, const SolveOptions& options);

enum class BetaRule {
  kDoubling,  // beta' = min(1 / (k - s + 1), 2 beta_s)
  kHalving,   // beta' = min(1 / (k - s + 1), beta_s / 2)
};

struct AdaptiveOptions {
  double beta0 = 1.0;
  BetaRule beta_rule = BetaRule::kDoubling;
  // Evaluate the restart test every `check_every` iterations.
  std::int64_t check_every = 1;
};

// Throws GapUnavailable when the problem's self-centered gap cannot be
// evaluated.
SolveResult run_adaptive(const SaddleProblem& p, const PrimalDualPoint& z0,
                         const StepSizes& steps,
                         const AdaptiveOptions& adaptive,
                         const SolveOptions& options);

}  // namespace rapdhg

#endif  // RAPDHG_SOLVER_H_
