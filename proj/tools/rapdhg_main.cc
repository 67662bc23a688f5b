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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rapdhg/cli.h"

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> max_iters;
  std::optional<double> tol;
};

void AddCommon(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "Experiment config (JSON)")
      ->required();
  cmd->add_option("--out", f.out, "Output file (default: stdout)");
  cmd->add_option("--seed", f.seed, "Seed for synthetic data");
  cmd->add_option("--max-iters", f.max_iters, "Iteration budget");
  cmd->add_option("--tol", f.tol, "Stopping tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = rapdhg::cli;
  CLI::App app{"rapdhg: primal-dual hybrid gradient experiments"};
  app.require_subcommand(1);
  CommonFlags flags;
  CLI::App* solve = app.add_subcommand("solve", "Run a solver, write a CSV log");
  CLI::App* rates =
      app.add_subcommand("rates", "Toy-problem rate table (JSON)");
  CLI::App* qeb = app.add_subcommand(
      "estimate-qeb", "Estimate error-bound constants and restart periods");
  CLI::App* bench =
      app.add_subcommand("bench", "Compare solver variants on one problem");
  for (CLI::App* c : {solve, rates, qeb, bench}) AddCommon(c, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kExitConfigError;
  }

  cli::ExperimentConfig config;
  try {
    config = cli::load_config(flags.config);
    if (flags.out) config.output = *flags.out;
    if (flags.seed) config.seed = *flags.seed;
    if (flags.max_iters) config.stop.max_iters = *flags.max_iters;
    if (flags.tol) config.stop.tol = *flags.tol;
    config.Validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitConfigError;
  }

  if (solve->parsed()) return cli::cmd_solve(config, std::cout, std::cerr);
  if (rates->parsed()) return cli::cmd_rates(config, std::cout, std::cerr);
  if (qeb->parsed()) return cli::cmd_estimate_qeb(config, std::cout, std::cerr);
  return cli::cmd_bench(config, std::cout, std::cerr);
}
