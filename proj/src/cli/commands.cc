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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "rapdhg/cli.h"
#include "rapdhg/gap.h"
#include "rapdhg/oracles.h"
#include "rapdhg/rates.h"

namespace rapdhg::cli {
namespace {

constexpr const char* kCsvHeader =
    "iter,dist_v,self_gap,kkt_primal,kkt_dual,restart";

std::string Num(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> SplitCsvLine(const std::string& line, long lineno) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (quoted) {
    throw std::runtime_error("csv line " + std::to_string(lineno) +
                             ": unterminated quote");
  }
  fields.push_back(cur);
  return fields;
}

double ParseNum(const std::string& s, long lineno) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) {
    throw std::runtime_error("csv line " + std::to_string(lineno) +
                             ": bad number '" + s + "'");
  }
  return v;
}

// Writes to config.output when set, else to `fallback`.
void Emit(const ExperimentConfig& config, std::ostream& fallback,
          const std::function<void(std::ostream&)>& body) {
  if (!config.output) {
    body(fallback);
    return;
  }
  if (config.output->has_parent_path()) {
    std::filesystem::create_directories(config.output->parent_path());
  }
  std::ofstream f(*config.output, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + config.output->string());
  body(f);
}

std::optional<PrimalDualPoint> TryReference(const ExperimentConfig& config,
                                            const BuiltProblem& built,
                                            std::ostream* err) {
  if (!config.reference.enabled) return std::nullopt;
  ReferenceOptions ro;
  ro.tol = config.reference.tol;
  ro.max_iters = config.reference.max_iters;
  ro.cache_dir = config.reference.cache_dir;
  try {
    return reference_solve(built.problem, built.steps, ro).z;
  } catch (const ReferenceUnconverged& e) {
    if (err) *err << "warning: no reference solution: " << e.what() << "\n";
    return std::nullopt;
  }
}

SolveResult RunVariant(const std::string& variant,
                       const ExperimentConfig& config,
                       const BuiltProblem& built, const SolveOptions& so) {
  const SaddleProblem& p = built.problem;
  const PrimalDualPoint z0 = PrimalDualPoint::Zero(p.n(), p.m());
  const std::int64_t budget = so.stop.max_iters;
  if (variant == "pdhg") return run_pdhg(p, z0, built.steps, so);
  if (variant == "apdhg") {
    const std::int64_t K =
        std::max<std::int64_t>(1, std::min(config.solver.K.value_or(budget),
                                           budget));
    return run_rapdhg(p, z0, built.steps, K, 1, so);
  }
  if (variant == "rapdhg") {
    const std::int64_t K = *config.solver.K;
    const std::int64_t epochs = config.solver.epochs.value_or(budget / K);
    return run_rapdhg(p, z0, built.steps, K, epochs, so);
  }
  AdaptiveOptions ao;
  ao.beta0 = config.solver.beta0.value_or(1.0);
  ao.beta_rule = config.solver.beta_rule;
  ao.check_every = config.solver.check_every;
  return run_adaptive(p, z0, built.steps, ao, so);
}

SolveOutcome RunWith(const std::string& variant,
                     const ExperimentConfig& config, const BuiltProblem& built,
                     const std::optional<PrimalDualPoint>& ref) {
  SolveOptions so;
  so.stop = config.stop;
  so.log = config.log;
  if (ref) {
    so.log.reference = *ref;
    if (so.stop.kind == StopKind::kDistance) so.stop.reference = *ref;
  }
  if (so.stop.kind == StopKind::kDistance && !so.stop.reference) {
    throw ConfigError("distance stopping needs a reference solution");
  }
  SolveOutcome out;
  out.reference_available = ref.has_value();
  out.result = RunVariant(variant, config, built, so);
  return out;
}

int Guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ReferenceUnconverged& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

std::vector<double> LogGrid(double lo, double hi, int points) {
  std::vector<double> g;
  if (points == 1) return {lo};
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int i = 0; i < points; ++i) {
    g.push_back(std::pow(10.0, a + (b - a) * i / (points - 1)));
  }
  return g;
}

nlohmann::json OptionalValue(const std::optional<double>& v) {
  if (!v) return "unavailable";
  return *v;
}

}  // namespace

void write_log_csv(const IterateLog& log, std::ostream& out) {
  out << kCsvHeader << "\n";
  for (const IterateRecord& r : log.records()) {
    out << r.iter << ',' << (r.dist_v ? Num(*r.dist_v) : "") << ','
        << Num(r.self_gap) << ',' << Num(r.kkt_primal) << ','
        << Num(r.kkt_dual) << ',' << (r.restart ? "true" : "false") << "\n";
  }
}

IterateLog read_log_csv(std::istream& in) {
  std::string line;
  long lineno = 1;
  if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw std::runtime_error("csv: unexpected header");
  IterateLog log;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = SplitCsvLine(line, lineno);
    if (f.size() != 6) {
      throw std::runtime_error("csv line " + std::to_string(lineno) +
                               ": expected 6 fields");
    }
    IterateRecord r;
    const double iter = ParseNum(f[0], lineno);
    if (!(iter >= 0.0) || iter != std::floor(iter)) {
      throw std::runtime_error("csv line " + std::to_string(lineno) +
                               ": bad iteration index");
    }
    r.iter = static_cast<std::int64_t>(iter);
    if (!f[1].empty()) r.dist_v = ParseNum(f[1], lineno);
    r.self_gap = ParseNum(f[2], lineno);
    r.kkt_primal = ParseNum(f[3], lineno);
    r.kkt_dual = ParseNum(f[4], lineno);
    if (f[5] == "true") {
      r.restart = true;
    } else if (f[5] != "false") {
      throw std::runtime_error("csv line " + std::to_string(lineno) +
                               ": restart must be true or false");
    }
    log.Append(r);
  }
  return log;
}

SolveOutcome run_experiment(const ExperimentConfig& config,
                            const BuiltProblem& built) {
  return RunWith(config.solver.variant, config, built,
                 TryReference(config, built, nullptr));
}

ToyRateRow toy_rate_row(double mu, const RatesConfig& rc) {
  ToyRateRow row;
  row.mu = mu;
  ToyProblem toy{.mu = mu, .a = rc.a, .b = 0.0, .tau = rc.tau,
                 .sigma = rc.sigma};
  row.true_rate = toy_exact_rate(toy);
  const StepSizes s(rc.tau, rc.sigma, std::abs(rc.a), mu, 0.0);
  const double lam = averaging_lambda(s.gamma(), s.alpha_f(), s.alpha_g());
  const double a2 = a2_const(s.alpha_f(), s.alpha_g(), s.gamma());

  try {
    row.msr = rate_msr(toy_msr_eta(mu, rc.a, rc.tau, rc.sigma), lam,
                       s.alpha_f(), s.alpha_g());
  } catch (const CertificateError&) {
  }
  if (mu > 0.0) {
    try {
      row.strconv_affine = rate_strconv_affine(mu, mu, std::abs(rc.a), rc.tau,
                                               rc.sigma, lam, a2);
    } catch (const CertificateError&) {
    }
  }
  const std::vector<double> grid =
      LogGrid(rc.beta_min, rc.beta_max, rc.beta_points);
  for (double bx : grid) {
    for (double by : grid) {
      try {
        const double q = rate_qebsm(
            toy_qeb_eta(mu, rc.a, rc.tau, rc.sigma, bx, by), lam, a2, bx, by);
        if (!row.qebsm || q < *row.qebsm) {
          row.qebsm = q;
          row.qebsm_beta_x = bx;
          row.qebsm_beta_y = by;
        }
      } catch (const CertificateError&) {
      }
      if (!(mu > 0.0)) continue;
      const ToyEtaPair eta = toy_qeb_eta_pair(mu, rc.a, rc.tau, rc.sigma, bx,
                                              by);
      SlowFastInputs in;
      in.mu_f = mu;
      in.eta_x = eta.eta_x;
      in.eta_y = eta.eta_y;
      in.beta_x = bx;
      in.beta_y = by;
      in.gamma = s.gamma();
      in.tau = rc.tau;
      in.sigma = rc.sigma;
      in.lambda = lam;
      in.a2 = a2;
      try {
        const SlowFastResult sf = rate_slowfast(in);
        if (sf.case_label != 0 && (!row.slowfast || sf.rho < *row.slowfast)) {
          row.slowfast = sf.rho;
          row.slowfast_C = sf.C;
          row.slowfast_case = sf.case_label;
        }
      } catch (const CertificateError&) {
      }
    }
  }
  return row;
}

double round_significant(double v, int digits) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  const double scale =
      std::pow(10.0, digits - 1 - std::floor(std::log10(std::abs(v))));
  return std::round(v * scale) / scale;
}

QebTable estimate_qeb_table(const ExperimentConfig& config,
                            const BuiltProblem& built) {
  const SaddleProblem& p = built.problem;
  const StepSizes& steps = built.steps;
  ReferenceOptions ro;
  ro.tol = config.reference.tol;
  ro.max_iters = config.reference.max_iters;
  ro.cache_dir = config.reference.cache_dir;
  const ReferenceSolution ref = reference_solve(p, steps, ro);

  std::vector<PrimalDualPoint> shadows;
  SolveOptions so;
  so.stop.kind = StopKind::kDistance;
  so.stop.tol = config.estimate.stop_dist;
  so.stop.max_iters = config.estimate.max_iters;
  so.stop.reference = ref.z;
  so.log.every = 0;
  so.observer = [&](std::int64_t, const PrimalDualPoint&,
                    const PrimalDualPoint& z_bar) {
    shadows.push_back(z_bar);
  };
  const SolveResult run =
      run_pdhg(p, PrimalDualPoint::Zero(p.n(), p.m()), steps, so);
  if (!run.converged) {
    throw ReferenceUnconverged(
        "estimate-qeb: PDHG did not reach the distance threshold", -1.0);
  }

  QebTable table;
  table.pdhg_iterations = run.iterations;
  table.reference_residual = ref.residual;
  const double a2 = a2_const(steps.alpha_f(), steps.alpha_g(), steps.gamma());
  EstimatorWindow window;
  window.skip_fraction = config.estimate.skip_fraction;
  for (double beta : config.estimate.betas) {
    QebRow row;
    row.beta = beta;
    row.eta_hat = estimate_qeb(shadows, ref.z, SmoothParams::Scalar(beta), p,
                               steps, window);
    row.K = restart_period(beta, round_significant(row.eta_hat, 1), a2).K;
    row.K_exact = restart_period(beta, row.eta_hat, a2).K;
    table.rows.push_back(row);
  }
  return table;
}

int cmd_solve(const ExperimentConfig& config, std::ostream& out,
              std::ostream& err) {
  return Guarded(err, [&] {
    const BuiltProblem built = build_problem(config);
    const SolveOutcome o = RunWith(config.solver.variant, config, built,
                                   TryReference(config, built, &err));
    Emit(config, out, [&](std::ostream& s) { write_log_csv(o.result.log, s); });
    err << (o.result.converged ? "converged" : "budget exhausted") << " after "
        << o.result.iterations << " iterations, kkt "
        << Num(o.result.last_residual.total()) << "\n";
    return o.result.converged ? kExitConverged : kExitBudget;
  });
}

int cmd_rates(const ExperimentConfig& config, std::ostream& out,
              std::ostream& err) {
  return Guarded(err, [&] {
    const RatesConfig& rc = config.rates;
    nlohmann::json doc;
    doc["a"] = rc.a;
    doc["tau"] = rc.tau;
    doc["sigma"] = rc.sigma;
    doc["beta_grid"] = {{"min", rc.beta_min},
                        {"max", rc.beta_max},
                        {"points", rc.beta_points}};
    doc["rows"] = nlohmann::json::array();
    for (double mu : rc.mu_grid) {
      const ToyRateRow r = toy_rate_row(mu, rc);
      nlohmann::json row;
      row["mu"] = r.mu;
      row["true_rate"] = r.true_rate;
      row["true_factor"] = r.true_rate * r.true_rate;
      row["msr"] = OptionalValue(r.msr);
      row["strconv_affine"] = OptionalValue(r.strconv_affine);
      row["qebsm"] = OptionalValue(r.qebsm);
      if (r.qebsm) {
        row["qebsm_beta"] = {r.qebsm_beta_x, r.qebsm_beta_y};
      }
      row["slowfast"] = OptionalValue(r.slowfast);
      if (r.slowfast) {
        row["slowfast_C"] = r.slowfast_C;
        row["slowfast_case"] = r.slowfast_case;
      }
      doc["rows"].push_back(row);
    }
    Emit(config, out, [&](std::ostream& s) { s << doc.dump(2) << "\n"; });
    return kExitConverged;
  });
}

int cmd_estimate_qeb(const ExperimentConfig& config, std::ostream& out,
                     std::ostream& err) {
  return Guarded(err, [&] {
    const BuiltProblem built = build_problem(config);
    const QebTable t = estimate_qeb_table(config, built);
    Emit(config, out, [&](std::ostream& s) {
      s << "beta,eta_hat,K,K_exact\n";
      for (const QebRow& r : t.rows) {
        s << Num(r.beta) << ',' << Num(r.eta_hat) << ',' << r.K << ','
          << r.K_exact << "\n";
      }
    });
    err << "pdhg iterations " << t.pdhg_iterations << ", reference residual "
        << Num(t.reference_residual) << "\n";
    return kExitConverged;
  });
}

int cmd_bench(const ExperimentConfig& config, std::ostream& out,
              std::ostream& err) {
  return Guarded(err, [&] {
    const BuiltProblem built = build_problem(config);
    const auto ref = TryReference(config, built, &err);
    std::vector<std::string> variants = {"pdhg", "adaptive"};
    if (config.solver.K) variants.push_back("rapdhg");
    ExperimentConfig quiet = config;
    quiet.log.every = 0;
    std::ostringstream table;
    table << "variant,iterations,converged,kkt,dist_v,restarts\n";
    bool all = true;
    for (const std::string& v : variants) {
      const auto t0 = std::chrono::steady_clock::now();
      const SolveOutcome o = RunWith(v, quiet, built, ref);
      const double secs = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
      const SolveResult& r = o.result;
      all = all && r.converged;
      table << v << ',' << r.iterations << ','
            << (r.converged ? "true" : "false") << ','
            << Num(r.last_residual.total()) << ','
            << (ref ? Num(v_dist(r.solution, *ref, built.steps)) : "") << ','
            << r.restarts.size() << "\n";
      err << v << ": " << secs << " s\n";
    }
    Emit(config, out, [&](std::ostream& s) { s << table.str(); });
    return all ? kExitConverged : kExitBudget;
  });
}

}  // namespace rapdhg::cli
