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

#ifndef RAPDHG_CLI_H_
#define RAPDHG_CLI_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rapdhg/operator.h"
#include "rapdhg/problem.h"
#include "rapdhg/problems.h"
#include "rapdhg/solver.h"

namespace rapdhg::cli {

inline constexpr int kExitConverged = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitBudget = 2;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemConfig {
  // toy | small_lp | lp | ridge | svm | tvl1
  std::string builder;
  // Data file (LP JSON, LIBSVM or PGM), resolved against the config file.
  std::optional<std::filesystem::path> path;
  // toy
  double mu = 0.0;
  double a = 0.03;
  double b = 0.0;
  // ridge / tvl1 synthetic sizes
  Index rows = 20;
  Index cols = 10;
  double c_reg = 50.0;
  // svm
  Index samples = 10;
  Index features = 5;
  bool normalize = true;
  // tvl1
  double lambda = 1.9;
};

struct StepConfig {
  // balanced | strongly_convex | explicit
  std::string strategy = "balanced";
  double gamma = 0.9;
  std::optional<double> tau;
  std::optional<double> sigma;
};

struct SolverConfig {
  // pdhg | apdhg | rapdhg | adaptive
  std::string variant = "pdhg";
  std::optional<std::int64_t> K;
  std::optional<std::int64_t> epochs;
  std::optional<double> beta0;
  BetaRule beta_rule = BetaRule::kDoubling;
  std::int64_t check_every = 1;
};

struct ReferenceConfig {
  bool enabled = true;
  double tol = 1e-12;
  std::int64_t max_iters = 1000000;
  std::optional<std::filesystem::path> cache_dir;
};

struct RatesConfig {
  std::vector<double> mu_grid = {0.0, 0.01, 0.1, 1.0};
  double a = 0.03;
  double tau = 1.0;
  double sigma = 1.0;
  double beta_min = 1e-4;
  double beta_max = 1e4;
  int beta_points = 81;
};

struct EstimateConfig {
  std::vector<double> betas = {1.0, 0.1, 0.01, 0.001};
  // PDHG runs from zero until dist_V to the reference drops below this.
  double stop_dist = 1e-3;
  double skip_fraction = 0.5;
  std::int64_t max_iters = 2000000;
};

struct ExperimentConfig {
  std::string name;
  std::uint64_t seed = 1;
  ProblemConfig problem;
  StepConfig steps;
  SolverConfig solver;
  StoppingRule stop;
  LogOptions log;
  ReferenceConfig reference;
  RatesConfig rates;
  EstimateConfig estimate;
  std::optional<std::filesystem::path> output;

  // Throws ConfigError on missing files or variant fields.
  void Validate() const;
};

// Relative paths are resolved against `base_dir`.
ExperimentConfig parse_config(const std::string& json_text,
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

struct BuiltProblem {
  SaddleProblem problem;
  std::optional<LPDescription> lp;
  StepSizes steps;
};
BuiltProblem build_problem(const ExperimentConfig& config);

// CSV with header iter,dist_v,self_gap,kkt_primal,kkt_dual,restart.
// Missing values are empty fields.
void write_log_csv(const IterateLog& log, std::ostream& out);
IterateLog read_log_csv(std::istream& in);

struct SolveOutcome {
  SolveResult result;
  bool reference_available = false;
};
SolveOutcome run_experiment(const ExperimentConfig& config,
                            const BuiltProblem& built);

struct ToyRateRow {
  double mu = 0.0;
  double true_rate = 0.0;
  // Certificates bound the squared distance; absent when unavailable.
  std::optional<double> msr;
  std::optional<double> strconv_affine;
  std::optional<double> qebsm;
  double qebsm_beta_x = 0.0;
  double qebsm_beta_y = 0.0;
  std::optional<double> slowfast;
  double slowfast_C = 0.0;
  int slowfast_case = 0;
};
ToyRateRow toy_rate_row(double mu, const RatesConfig& rates);

struct QebRow {
  double beta = 0.0;
  double eta_hat = 0.0;
  // From eta_hat rounded to one significant digit.
  std::int64_t K = 0;
  std::int64_t K_exact = 0;
};
struct QebTable {
  std::vector<QebRow> rows;
  std::int64_t pdhg_iterations = 0;
  double reference_residual = 0.0;
};
QebTable estimate_qeb_table(const ExperimentConfig& config,
                            const BuiltProblem& built);

double round_significant(double v, int digits);

// Each command writes its artifact to config.output (or `out` when unset)
// and diagnostics to `err`, returning the process exit status.
int cmd_solve(const ExperimentConfig& config, std::ostream& out,
              std::ostream& err);
int cmd_rates(const ExperimentConfig& config, std::ostream& out,
              std::ostream& err);
int cmd_estimate_qeb(const ExperimentConfig& config, std::ostream& out,
                     std::ostream& err);
int cmd_bench(const ExperimentConfig& config, std::ostream& out,
              std::ostream& err);

}  // namespace rapdhg::cli

#endif  // RAPDHG_CLI_H_
