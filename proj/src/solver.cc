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

#include "rapdhg/solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rapdhg {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class Monitor {
 public:
  Monitor(const SaddleProblem& p, const StepSizes& steps,
          const SolveOptions& options)
      : p_(p), steps_(steps), options_(options) {
    const StoppingRule& stop = options.stop;
    if (stop.max_iters < 0) {
      throw std::invalid_argument("StoppingRule: max_iters must be >= 0");
    }
    if (stop.kind == StopKind::kDistance && !stop.reference) {
      throw std::invalid_argument("StoppingRule: distance rule needs a point");
    }
    if (stop.kind == StopKind::kSelfGap) {
      check_gap_available(p, SmoothParams{0.0, 0.0});
    }
    log_gap_ = options.log.log_gap && options.log.every > 0;
    if (log_gap_) {
      try {
        check_gap_available(p, options.log.gap_beta);
      } catch (const GapUnavailable&) {
        log_gap_ = false;
      }
    }
  }

  // True when the stopping rule certifies z (state) or z_bar (shadow);
  // `res` is the residual of the step that produced them.
  bool Converged(const PrimalDualPoint& z, const PrimalDualPoint& z_bar,
                 const KktResidual& res, PrimalDualPoint& certified) const {
    const StoppingRule& stop = options_.stop;
    switch (stop.kind) {
      case StopKind::kMaxIters:
        return false;
      case StopKind::kKkt:
        if (res.total() <= stop.tol) {
          certified = z;
          return true;
        }
        return false;
      case StopKind::kDistance:
        if (v_dist(z, *stop.reference, steps_) <= stop.tol) {
          certified = z;
          return true;
        }
        return false;
      case StopKind::kSelfGap: {
        const double g =
            self_centered_gap(p_, z_bar, SmoothParams{0.0, res.dual}, steps_)
                .value;
        if (g <= stop.tol) {
          certified = z_bar;
          return true;
        }
        return false;
      }
    }
    return false;
  }

  bool ShouldLog(std::int64_t k) const {
    return options_.log.every > 0 && k % options_.log.every == 0;
  }

  void Log(IterateLog& log, std::int64_t k, const PrimalDualPoint& z,
           const PrimalDualPoint& z_bar, const KktResidual& res,
           bool restart) const {
    if (options_.log.every <= 0) return;
    if (!log.empty() && log.records().back().iter >= k) return;
    IterateRecord rec;
    rec.iter = k;
    if (options_.log.reference) {
      rec.dist_v = v_dist(z, *options_.log.reference, steps_);
    }
    rec.self_gap =
        log_gap_
            ? self_centered_gap(p_, z_bar, options_.log.gap_beta, steps_).value
            : kNaN;
    rec.kkt_primal = res.primal;
    rec.kkt_dual = res.dual;
    rec.restart = restart;
    log.Append(rec);
  }

  void Observe(std::int64_t k, const PrimalDualPoint& z,
               const PrimalDualPoint& z_bar) const {
    if (options_.observer) options_.observer(k, z, z_bar);
  }

 private:
  const SaddleProblem& p_;
  const StepSizes& steps_;
  const SolveOptions& options_;
  bool log_gap_ = false;
};

void CheckStart(const SaddleProblem& p, const PrimalDualPoint& z0) {
  p.Validate();
  if (z0.x.size() != p.n() || z0.y.size() != p.m()) {
    throw std::invalid_argument("initial point has dimensions (" +
                                std::to_string(z0.x.size()) + ", " +
                                std::to_string(z0.y.size()) +
                                "), problem needs (" + std::to_string(p.n()) +
                                ", " + std::to_string(p.m()) + ")");
  }
}

PrimalDualPoint Mean(const PrimalDualPoint& sum, std::int64_t count) {
  return (1.0 / static_cast<double>(count)) * sum;
}

}  // namespace

void IterateLog::Append(const IterateRecord& rec) {
  if (!records_.empty() && rec.iter <= records_.back().iter) {
    throw std::invalid_argument("IterateLog: iteration indices must increase");
  }
  records_.push_back(rec);
}

SolveResult run_pdhg(const SaddleProblem& p, const PrimalDualPoint& z0,
                     const StepSizes& steps, const SolveOptions& options) {
  CheckStart(p, z0);
  Monitor monitor(p, steps, options);
  SolveResult result;
  result.state.z = z0;
  StepResult step;
  for (std::int64_t k = 1; k <= options.stop.max_iters; ++k) {
    pdhg_step(p, result.state.z, steps, step);
    const KktResidual res = residual_between(result.state.z, step.next, steps);
    std::swap(result.state.z, step.next);
    result.state.z_bar = step.shadow;
    result.state.k_global = k;
    result.iterations = k;
    result.last_residual = res;
    monitor.Observe(k, result.state.z, result.state.z_bar);
    const bool done = monitor.Converged(result.state.z, result.state.z_bar,
                                        res, result.solution);
    if (done || monitor.ShouldLog(k) || k == options.stop.max_iters) {
      monitor.Log(result.log, k, result.state.z, result.state.z_bar, res,
                  false);
    }
    if (done) {
      result.converged = true;
      return result;
    }
  }
  result.solution = result.state.z;
  return result;
}

PrimalDualPoint run_apdhg(const SaddleProblem& p, const PrimalDualPoint& z0,
                          const StepSizes& steps, std::int64_t K) {
  CheckStart(p, z0);
  if (K < 1) throw std::invalid_argument("run_apdhg: K must be >= 1");
  PrimalDualPoint z = z0;
  PrimalDualPoint sum = PrimalDualPoint::Zero(p.n(), p.m());
  StepResult step;
  for (std::int64_t k = 0; k < K; ++k) {
    pdhg_step(p, z, steps, step);
    std::swap(z, step.next);
    sum += step.shadow;
  }
  return Mean(sum, K);
}

SolveResult run_rapdhg(const SaddleProblem& p, const PrimalDualPoint& z0,
                       const StepSizes& steps, std::int64_t K,
                       std::int64_t epochs, const SolveOptions& options) {
  CheckStart(p, z0);
  if (K < 1) throw std::invalid_argument("run_rapdhg: K must be >= 1");
  if (epochs < 0) throw std::invalid_argument("run_rapdhg: epochs < 0");
  Monitor monitor(p, steps, options);
  SolveResult result;
  result.solution = z0;
  result.state.z = z0;
  result.state.z_tilde = z0;
  StepResult step;
  std::int64_t total = 0;
  for (std::int64_t e = 0; e < epochs; ++e) {
    if (total + K > options.stop.max_iters) break;
    PrimalDualPoint z = result.state.z;
    PrimalDualPoint sum = PrimalDualPoint::Zero(p.n(), p.m());
    for (std::int64_t k = 0; k < K; ++k) {
      pdhg_step(p, z, steps, step);
      std::swap(z, step.next);
      sum += step.shadow;
      ++total;
      monitor.Observe(total, z, step.shadow);
    }
    result.state.z_bar = step.shadow;
    result.state.z = Mean(sum, K);
    result.state.z_tilde = result.state.z;
    result.state.s = total;
    result.state.k_global = total;
    result.iterations = total;
    // Residual of the new restart point; not counted as an iteration.
    const StepResult probe = pdhg_step(p, result.state.z, steps);
    const KktResidual res = residual_between(result.state.z, probe.next, steps);
    result.last_residual = res;
    result.restarts.push_back({total, true, 0.0, 0.0});
    const bool done = monitor.Converged(result.state.z, result.state.z, res,
                                        result.solution);
    monitor.Log(result.log, total, result.state.z, result.state.z, res, true);
    if (done) {
      result.converged = true;
      return result;
    }
  }
  result.solution = result.state.z;
  return result;
}

SolveResult run_adaptive(const SaddleProblem& p, const PrimalDualPoint& z0,
                         const StepSizes& steps,
                         const AdaptiveOptions& adaptive,
                         const SolveOptions& options) {
  CheckStart(p, z0);
  if (!(adaptive.beta0 > 0.0) || std::isinf(adaptive.beta0)) {
    throw std::invalid_argument("run_adaptive: beta0 must be positive");
  }
  if (adaptive.check_every < 1) {
    throw std::invalid_argument("run_adaptive: check_every must be >= 1");
  }
  check_gap_available(p, SmoothParams::Scalar(adaptive.beta0));
  Monitor monitor(p, steps, options);
  const VNormParams vp = steps;

  SolveResult result;
  SolverState& st = result.state;
  st.z = z0;
  st.z_tilde = z0;
  st.s = 0;
  st.beta_s = adaptive.beta0;
  st.gap_at_restart =
      self_centered_gap(p, z0, SmoothParams::Scalar(st.beta_s), vp).value;
  PrimalDualPoint sum = PrimalDualPoint::Zero(p.n(), p.m());
  StepResult step;

  for (std::int64_t k = 0; k < options.stop.max_iters; ++k) {
    pdhg_step(p, st.z, steps, step);
    const KktResidual res = residual_between(st.z, step.next, steps);
    std::swap(st.z, step.next);
    st.z_bar = step.shadow;
    st.k_global = k + 1;
    result.iterations = k + 1;
    result.last_residual = res;
    sum += st.z_bar;
    const std::int64_t count = k + 1 - st.s;
    monitor.Observe(k + 1, st.z, st.z_bar);

    if (monitor.Converged(st.z, st.z_bar, res, result.solution)) {
      st.z_tilde = Mean(sum, count);
      monitor.Log(result.log, k + 1, st.z, st.z_bar, res, false);
      result.converged = true;
      return result;
    }

    bool restarted = false;
    if (count >= 2 && count % adaptive.check_every == 0) {
      const double inv = 1.0 / static_cast<double>(count);
      const double beta_next =
          adaptive.beta_rule == BetaRule::kDoubling
              ? std::min(inv, 2.0 * st.beta_s)
              : std::min(inv, 0.5 * st.beta_s);
      const SmoothParams bp = SmoothParams::Scalar(beta_next);
      st.z_tilde = Mean(sum, count);
      const double g_tilde = self_centered_gap(p, st.z_tilde, bp, vp).value;
      const double g_bar = self_centered_gap(p, st.z_bar, bp, vp).value;
      const double g_curr = std::min(g_tilde, g_bar);
      if (g_curr <= 0.5 * st.gap_at_restart ||
          st.gap_at_restart <= 0.01 * g_curr) {
        const bool averaged = g_tilde <= g_bar;
        if (averaged) st.z = st.z_tilde;
        st.beta_s = beta_next;
        st.gap_at_restart = g_curr;
        st.s = k + 1;
        sum.x.setZero();
        sum.y.setZero();
        restarted = true;
        result.restarts.push_back({k + 1, averaged, beta_next, g_curr});
      }
    }
    if (restarted || monitor.ShouldLog(k + 1) ||
        k + 1 == options.stop.max_iters) {
      monitor.Log(result.log, k + 1, st.z, st.z_bar, res, restarted);
    }
  }
  result.solution = st.z;
  return result;
}

}  // namespace rapdhg
