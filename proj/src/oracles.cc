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

#include "rapdhg/oracles.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace rapdhg {
namespace {

std::size_t FirstIndex(std::size_t size, double skip_fraction) {
  if (!(skip_fraction >= 0.0) || !(skip_fraction < 1.0)) {
    throw std::invalid_argument("skip_fraction must lie in [0, 1)");
  }
  return static_cast<std::size_t>(std::floor(skip_fraction * size));
}

std::string Hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

std::optional<ReferenceSolution> LoadCached(const std::filesystem::path& dir,
                                            const SaddleProblem& p,
                                            double tol) {
  const std::string key = Hex(p.metadata.fingerprint);
  const auto manifest_path = dir / (key + ".json");
  const auto data_path = dir / (key + ".ref");
  std::ifstream mf(manifest_path);
  std::ifstream df(data_path);
  if (!mf || !df) return std::nullopt;
  nlohmann::json manifest;
  try {
    mf >> manifest;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
  if (manifest.value("fingerprint", std::string()) != key ||
      manifest.value("n", -1) != p.n() || manifest.value("m", -1) != p.m() ||
      !(manifest.value("tol", 1.0) <= tol)) {
    return std::nullopt;
  }
  ReferenceSolution sol;
  sol.z = PrimalDualPoint::Zero(p.n(), p.m());
  for (Index i = 0; i < p.n(); ++i) {
    if (!(df >> sol.z.x[i])) return std::nullopt;
  }
  for (Index i = 0; i < p.m(); ++i) {
    if (!(df >> sol.z.y[i])) return std::nullopt;
  }
  sol.residual = manifest.value("residual", 0.0);
  sol.iterations = manifest.value("iterations", std::int64_t{0});
  sol.from_cache = true;
  return sol;
}

void StoreCached(const std::filesystem::path& dir, const SaddleProblem& p,
                 double tol, const ReferenceSolution& sol) {
  std::filesystem::create_directories(dir);
  const std::string key = Hex(p.metadata.fingerprint);
  {
    std::ofstream df(dir / (key + ".ref"));
    char buf[32];
    for (Index i = 0; i < sol.z.x.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g\n", sol.z.x[i]);
      df << buf;
    }
    for (Index i = 0; i < sol.z.y.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g\n", sol.z.y[i]);
      df << buf;
    }
  }
  nlohmann::json manifest = {
      {"fingerprint", key},     {"problem", p.metadata.name},
      {"n", p.n()},             {"m", p.m()},
      {"tol", tol},             {"residual", sol.residual},
      {"iterations", sol.iterations},
  };
  std::ofstream mf(dir / (key + ".json"));
  mf << manifest.dump(2) << "\n";
}

}  // namespace

double toy_exact_rate(const ToyProblem& toy) {
  toy.Validate();
  const double g = toy.sigma * toy.tau * toy.a * toy.a;
  const double tm = 1.0 - toy.tau * toy.mu;
  const double r11 = (1.0 - g) * tm;
  const double r12 = -toy.tau * toy.a * (1.0 - g);
  const double r21 = toy.sigma * toy.a * tm;
  const double r22 = 1.0 - g;
  const double half_trace = 0.5 * (r11 + r22);
  const double det = r11 * r22 - r12 * r21;
  const std::complex<double> root =
      std::sqrt(std::complex<double>(half_trace * half_trace - det, 0.0));
  double best = 0.0;
  for (const std::complex<double> ev : {half_trace + root, half_trace - root}) {
    if (std::abs(ev - 1.0) <= 1e-14) continue;
    best = std::max(best, std::abs(ev));
  }
  return best;
}

double fit_contraction(const std::vector<double>& values,
                       double head_fraction) {
  const std::size_t start = FirstIndex(values.size(), head_fraction);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (std::size_t k = start; k < values.size(); ++k) {
    if (!(values[k] > 0.0) || !std::isfinite(values[k])) continue;
    const double x = static_cast<double>(k - start);
    const double y = std::log(values[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) throw EstimationError("fit_contraction: too few samples");
  const double n = static_cast<double>(count);
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0) throw EstimationError("fit_contraction: degenerate data");
  return std::exp((n * sxy - sx * sy) / denom);
}

double estimate_qeb(const std::vector<PrimalDualPoint>& iterates,
                    const PrimalDualPoint& z_star, const SmoothParams& beta,
                    const SaddleProblem& p, const StepSizes& steps,
                    const EstimatorWindow& window) {
  double best = kInf;
  bool any = false;
  for (std::size_t k = FirstIndex(iterates.size(), window.skip_fraction);
       k < iterates.size(); ++k) {
    const double d = v_dist(iterates[k], z_star, steps);
    if (d < window.min_dist) continue;
    const double g = smoothed_gap(p, iterates[k], z_star, beta, steps).value;
    best = std::min(best, g / (0.5 * d * d));
    any = true;
  }
  if (!any) throw EstimationError("estimate_qeb: no admissible iterate");
  return best;
}

double estimate_msr(const std::vector<PrimalDualPoint>& iterates,
                    const PrimalDualPoint& z_star, const SaddleProblem& p,
                    const StepSizes& steps, const EstimatorWindow& window) {
  double best = kInf;
  bool any = false;
  for (std::size_t k = FirstIndex(iterates.size(), window.skip_fraction);
       k < iterates.size(); ++k) {
    const double d = v_dist(iterates[k], z_star, steps);
    if (d < window.min_dist) continue;
    best = std::min(best, kkt_residual(p, iterates[k], steps).total() / d);
    any = true;
  }
  if (!any) throw EstimationError("estimate_msr: no admissible iterate");
  return best;
}

double lp_gap_closed_form(const LPDescription& lp, const PrimalDualPoint& z,
                          const PrimalDualPoint& z_star, double beta,
                          const VNormParams& steps) {
  lp.Validate();
  if (!(beta > 0.0) || std::isinf(beta)) {
    throw std::invalid_argument("lp_gap_closed_form: beta must be finite > 0");
  }
  const double tau = steps.tau();
  const double sigma = steps.sigma();
  const Vec& x = z.x;
  const Vec& y = z.y;
  const Vec& xs = z_star.x;
  const Vec& ys = z_star.y;
  for (Index j : lp.N) {
    if (x[j] < -kFeasibilityTol) return kInf;
  }
  for (Index i : lp.I) {
    if (y[i] < -kFeasibilityTol) return kInf;
  }
  // Primal side: <c, x> + sup over y' of <Ax - b, y'> penalized around y*.
  const Vec r = lp.A * x - lp.b;
  double primal = lp.c.dot(x);
  for (Index i : lp.E) {
    primal += r[i] * ys[i] + sigma / (2.0 * beta) * r[i] * r[i];
  }
  for (Index i : lp.I) {
    const double u = std::max(0.0, ys[i] + sigma / beta * r[i]);
    primal += beta / (2.0 * sigma) * (u * u - ys[i] * ys[i]);
  }
  // Dual side: <b, y> + sup over x' of -<c + A^T y, x'> penalized around x*.
  const Vec w = lp.c + lp.A.transpose() * y;
  double dual = lp.b.dot(y);
  for (Index j : lp.F) {
    dual += -w[j] * xs[j] + tau / (2.0 * beta) * w[j] * w[j];
  }
  for (Index j : lp.N) {
    const double u = std::max(0.0, xs[j] - tau / beta * w[j]);
    dual += beta / (2.0 * tau) * (u * u - xs[j] * xs[j]);
  }
  return primal + dual;
}

ReferenceSolution reference_solve(const SaddleProblem& p,
                                  const StepSizes& steps,
                                  const ReferenceOptions& options) {
  if (!(options.tol > 0.0)) {
    throw std::invalid_argument("reference_solve: tol must be positive");
  }
  if (options.cache_dir) {
    if (auto cached = LoadCached(*options.cache_dir, p, options.tol)) {
      return *cached;
    }
  }
  SolveOptions so;
  so.stop.kind = StopKind::kKkt;
  so.stop.tol = options.tol;
  so.stop.max_iters = options.max_iters;
  so.log.every = 0;
  const SolveResult r =
      run_adaptive(p, PrimalDualPoint::Zero(p.n(), p.m()), steps,
                   options.adaptive, so);
  if (!r.converged) {
    throw ReferenceUnconverged(
        "reference_solve: KKT residual " +
            std::to_string(r.last_residual.total()) + " above " +
            std::to_string(options.tol) + " after " +
            std::to_string(r.iterations) + " iterations",
        r.last_residual.total());
  }
  ReferenceSolution sol{r.solution, r.last_residual.total(), r.iterations,
                        false};
  if (options.cache_dir) StoreCached(*options.cache_dir, p, options.tol, sol);
  return sol;
}

}  // namespace rapdhg
