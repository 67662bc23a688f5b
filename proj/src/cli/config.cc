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

#include <cmath>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "rapdhg/cli.h"
#include "rapdhg/io.h"

namespace rapdhg::cli {
namespace {

using nlohmann::json;

const json& Section(const json& root, const char* key) {
  static const json kEmpty = json::object();
  if (!root.contains(key)) return kEmpty;
  const json& s = root.at(key);
  if (!s.is_object()) {
    throw ConfigError(std::string("'") + key + "' must be an object");
  }
  return s;
}

void CheckKeys(const json& obj, const char* where,
               const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError(std::string("unknown key '") + key + "' in " + where);
    }
  }
}

template <typename T>
void Read(const json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad value for '") + key + "'");
  }
}

template <typename T>
void ReadOptional(const json& obj, const char* key, std::optional<T>& out) {
  if (!obj.contains(key) || obj.at(key).is_null()) return;
  T v{};
  Read(obj, key, v);
  out = v;
}

std::filesystem::path Resolve(const std::filesystem::path& base,
                              const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) path = base / path;
  return path;
}

StopKind ParseStopKind(const std::string& s) {
  if (s == "max_iters") return StopKind::kMaxIters;
  if (s == "self_gap") return StopKind::kSelfGap;
  if (s == "kkt") return StopKind::kKkt;
  if (s == "distance") return StopKind::kDistance;
  throw ConfigError("unknown stop kind '" + s + "'");
}

BetaRule ParseBetaRule(const std::string& s) {
  if (s == "doubling") return BetaRule::kDoubling;
  if (s == "halving") return BetaRule::kHalving;
  throw ConfigError("unknown beta_rule '" + s + "'");
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text,
                              const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  CheckKeys(root, "config",
            {"name", "seed", "problem", "steps", "solver", "stop", "log",
             "reference", "rates", "estimate", "output"});

  ExperimentConfig c;
  Read(root, "name", c.name);
  Read(root, "seed", c.seed);

  const json& pr = Section(root, "problem");
  CheckKeys(pr, "problem",
            {"builder", "path", "mu", "a", "b", "rows", "cols", "c_reg",
             "samples", "features", "normalize", "lambda"});
  Read(pr, "builder", c.problem.builder);
  if (pr.contains("path")) {
    std::string p;
    Read(pr, "path", p);
    c.problem.path = Resolve(base_dir, p);
  }
  Read(pr, "mu", c.problem.mu);
  Read(pr, "a", c.problem.a);
  Read(pr, "b", c.problem.b);
  Read(pr, "rows", c.problem.rows);
  Read(pr, "cols", c.problem.cols);
  Read(pr, "c_reg", c.problem.c_reg);
  Read(pr, "samples", c.problem.samples);
  Read(pr, "features", c.problem.features);
  Read(pr, "normalize", c.problem.normalize);
  Read(pr, "lambda", c.problem.lambda);

  const json& st = Section(root, "steps");
  CheckKeys(st, "steps", {"strategy", "gamma", "tau", "sigma"});
  Read(st, "strategy", c.steps.strategy);
  Read(st, "gamma", c.steps.gamma);
  ReadOptional(st, "tau", c.steps.tau);
  ReadOptional(st, "sigma", c.steps.sigma);

  const json& so = Section(root, "solver");
  CheckKeys(so, "solver",
            {"variant", "K", "epochs", "beta0", "beta_rule", "check_every"});
  Read(so, "variant", c.solver.variant);
  ReadOptional(so, "K", c.solver.K);
  ReadOptional(so, "epochs", c.solver.epochs);
  ReadOptional(so, "beta0", c.solver.beta0);
  if (so.contains("beta_rule")) {
    std::string rule;
    Read(so, "beta_rule", rule);
    c.solver.beta_rule = ParseBetaRule(rule);
  }
  Read(so, "check_every", c.solver.check_every);

  const json& sp = Section(root, "stop");
  CheckKeys(sp, "stop", {"kind", "tol", "max_iters"});
  if (sp.contains("kind")) {
    std::string kind;
    Read(sp, "kind", kind);
    c.stop.kind = ParseStopKind(kind);
  }
  Read(sp, "tol", c.stop.tol);
  Read(sp, "max_iters", c.stop.max_iters);

  const json& lg = Section(root, "log");
  CheckKeys(lg, "log", {"every", "gap_beta"});
  Read(lg, "every", c.log.every);
  if (lg.contains("gap_beta")) {
    double beta = 0.0;
    Read(lg, "gap_beta", beta);
    c.log.gap_beta = SmoothParams::Scalar(beta);
  }

  const json& rf = Section(root, "reference");
  CheckKeys(rf, "reference", {"enabled", "tol", "max_iters", "cache_dir"});
  Read(rf, "enabled", c.reference.enabled);
  Read(rf, "tol", c.reference.tol);
  Read(rf, "max_iters", c.reference.max_iters);
  if (rf.contains("cache_dir")) {
    std::string p;
    Read(rf, "cache_dir", p);
    c.reference.cache_dir = Resolve(base_dir, p);
  }

  const json& rt = Section(root, "rates");
  CheckKeys(rt, "rates",
            {"mu_grid", "a", "tau", "sigma", "beta_min", "beta_max",
             "beta_points"});
  Read(rt, "mu_grid", c.rates.mu_grid);
  Read(rt, "a", c.rates.a);
  Read(rt, "tau", c.rates.tau);
  Read(rt, "sigma", c.rates.sigma);
  Read(rt, "beta_min", c.rates.beta_min);
  Read(rt, "beta_max", c.rates.beta_max);
  Read(rt, "beta_points", c.rates.beta_points);

  const json& es = Section(root, "estimate");
  CheckKeys(es, "estimate",
            {"betas", "stop_dist", "skip_fraction", "max_iters"});
  Read(es, "betas", c.estimate.betas);
  Read(es, "stop_dist", c.estimate.stop_dist);
  Read(es, "skip_fraction", c.estimate.skip_fraction);
  Read(es, "max_iters", c.estimate.max_iters);

  if (root.contains("output")) {
    std::string p;
    Read(root, "output", p);
    c.output = Resolve(base_dir, p);
  }
  c.Validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text, path.parent_path());
}

void ExperimentConfig::Validate() const {
  static const std::set<std::string> kBuilders = {"toy",   "small_lp", "lp",
                                                  "ridge", "svm",      "tvl1"};
  if (!kBuilders.count(problem.builder)) {
    throw ConfigError("unknown problem builder '" + problem.builder + "'");
  }
  if (problem.builder == "lp" && !problem.path) {
    throw ConfigError("problem 'lp' needs a path");
  }
  if (problem.path && !std::filesystem::exists(*problem.path)) {
    throw ConfigError("file not found: " + problem.path->string());
  }
  if (problem.rows < 1 || problem.cols < 1 || problem.samples < 1 ||
      problem.features < 1) {
    throw ConfigError("problem sizes must be positive");
  }

  if (steps.strategy == "explicit") {
    if (!steps.tau || !steps.sigma) {
      throw ConfigError("explicit steps need tau and sigma");
    }
  } else if (steps.strategy != "balanced" &&
             steps.strategy != "strongly_convex") {
    throw ConfigError("unknown step strategy '" + steps.strategy + "'");
  }
  if (!(steps.gamma > 0.0 && steps.gamma < 1.0)) {
    throw ConfigError("steps.gamma must lie in (0, 1)");
  }

  const std::string& v = solver.variant;
  if (v == "rapdhg") {
    if (!solver.K) throw ConfigError("variant 'rapdhg' needs solver.K");
  } else if (v == "adaptive") {
    if (!solver.beta0) {
      throw ConfigError("variant 'adaptive' needs solver.beta0");
    }
  } else if (v != "pdhg" && v != "apdhg") {
    throw ConfigError("unknown solver variant '" + v + "'");
  }
  if (solver.K && *solver.K < 1) throw ConfigError("solver.K must be >= 1");
  if (solver.epochs && *solver.epochs < 0) {
    throw ConfigError("solver.epochs must be >= 0");
  }
  if (solver.beta0 && !(*solver.beta0 > 0.0 && std::isfinite(*solver.beta0))) {
    throw ConfigError("solver.beta0 must be positive");
  }
  if (solver.check_every < 1) {
    throw ConfigError("solver.check_every must be >= 1");
  }

  if (!(stop.tol > 0.0)) throw ConfigError("stop.tol must be positive");
  if (stop.max_iters < 0) throw ConfigError("stop.max_iters must be >= 0");
  if (log.every < 0) throw ConfigError("log.every must be >= 0");
  if (!(log.gap_beta.beta_x >= 0.0)) {
    throw ConfigError("log.gap_beta must be >= 0");
  }
  if (!(reference.tol > 0.0) || reference.max_iters < 1) {
    throw ConfigError("reference tolerances must be positive");
  }

  if (rates.mu_grid.empty()) throw ConfigError("rates.mu_grid is empty");
  for (double mu : rates.mu_grid) {
    if (!(mu >= 0.0)) throw ConfigError("rates.mu_grid entries must be >= 0");
  }
  if (!(rates.tau > 0.0 && rates.sigma > 0.0)) {
    throw ConfigError("rates.tau and rates.sigma must be positive");
  }
  if (!(rates.beta_min > 0.0 && rates.beta_max >= rates.beta_min) ||
      rates.beta_points < 1) {
    throw ConfigError("bad rates beta grid");
  }

  for (double beta : estimate.betas) {
    if (!(beta > 0.0) || std::isinf(beta)) {
      throw ConfigError("estimate.betas must be finite and positive");
    }
  }
  if (!(estimate.stop_dist > 0.0)) {
    throw ConfigError("estimate.stop_dist must be positive");
  }
  if (!(estimate.skip_fraction >= 0.0 && estimate.skip_fraction < 1.0)) {
    throw ConfigError("estimate.skip_fraction must lie in [0, 1)");
  }
}

namespace {

StepSizes MakeSteps(const ExperimentConfig& c, const SaddleProblem& p) {
  if (c.steps.strategy == "explicit") {
    return StepSizes::ForProblem(p, *c.steps.tau, *c.steps.sigma);
  }
  StepOptions o;
  o.gamma = c.steps.gamma;
  if (c.steps.strategy == "strongly_convex") {
    if (!p.metadata.mu_f || !p.metadata.mu_gstar || *p.metadata.mu_f <= 0.0 ||
        *p.metadata.mu_gstar <= 0.0) {
      throw ConfigError("strongly_convex steps need mu_f > 0 and mu_g* > 0");
    }
    o.strategy = StepStrategy::kStronglyConvex;
    o.mu_f = *p.metadata.mu_f;
    o.mu_gstar = *p.metadata.mu_gstar;
  }
  return default_steps(p, o);
}

}  // namespace

BuiltProblem build_problem(const ExperimentConfig& c) {
  const ProblemConfig& pc = c.problem;
  std::optional<LPDescription> lp;
  SaddleProblem p = [&]() -> SaddleProblem {
    try {
      if (pc.builder == "toy") {
        return build_toy({.mu = pc.mu, .a = pc.a, .b = pc.b});
      }
      if (pc.builder == "small_lp" || pc.builder == "lp") {
        lp = pc.builder == "lp" ? read_lp_json(*pc.path) : small_lp();
        return build_lp(*lp);
      }
      if (pc.builder == "ridge") {
        if (pc.path) {
          const LabeledData d = read_libsvm(*pc.path);
          return build_ridge(Eigen::MatrixXd(d.X), d.labels, pc.c_reg);
        }
        const RidgeData d = synthetic_ridge(pc.rows, pc.cols, c.seed);
        return build_ridge(d.A, d.b, pc.c_reg);
      }
      if (pc.builder == "svm") {
        const LabeledData d = pc.path
                                  ? read_libsvm(*pc.path)
                                  : synthetic_svm(pc.samples, pc.features,
                                                  c.seed);
        return build_svm(d.X, d.labels, pc.normalize);
      }
      const Field2D img =
          pc.path ? read_pgm(*pc.path) : two_level_image(pc.rows, pc.cols);
      return build_tvl1(img, pc.lambda);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }();
  try {
    StepSizes steps = MakeSteps(c, p);
    return BuiltProblem{std::move(p), std::move(lp), steps};
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace rapdhg::cli
