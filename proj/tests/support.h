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

#ifndef RAPDHG_TESTS_SUPPORT_H_
#define RAPDHG_TESTS_SUPPORT_H_

#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rapdhg/oracles.h"
#include "rapdhg/problems.h"

namespace rapdhg::testing {

struct Case {
  std::string name;
  SaddleProblem problem;
  StepSizes steps;
  PrimalDualPoint z_star;
  std::optional<LPDescription> lp;
};

inline Case MakeCase(std::string name, SaddleProblem p, StepSizes steps,
                     std::optional<LPDescription> lp = std::nullopt) {
  const ReferenceSolution ref = reference_solve(p, steps);
  return Case{std::move(name), std::move(p), steps, ref.z, std::move(lp)};
}

inline StepSizes Balanced(const SaddleProblem& p, double gamma = 0.9) {
  StepOptions o;
  o.gamma = gamma;
  return default_steps(p, o);
}

inline StepSizes StronglyConvex(const SaddleProblem& p) {
  StepOptions o;
  o.strategy = StepStrategy::kStronglyConvex;
  o.mu_f = *p.metadata.mu_f;
  o.mu_gstar = *p.metadata.mu_gstar;
  return default_steps(p, o);
}

inline Case ToyCase() {
  SaddleProblem p = build_toy({.mu = 0.01, .a = 0.03, .b = 0.03});
  const StepSizes s = StepSizes::ForProblem(p, 1.0, 1.0);
  return MakeCase("toy", std::move(p), s);
}

inline Case SmallLpCase(double gamma = 0.9) {
  LPDescription lp = small_lp();
  SaddleProblem p = build_lp(lp);
  const StepSizes s = Balanced(p, gamma);
  return MakeCase("small_lp", std::move(p), s, std::move(lp));
}

inline Case RidgeCase() {
  const RidgeData d = synthetic_ridge(20, 10, 1);
  SaddleProblem p = build_ridge(d.A, d.b, 50.0);
  const StepSizes s = StronglyConvex(p);
  return MakeCase("ridge", std::move(p), s);
}

inline Case TvL1Case() {
  SaddleProblem p = build_tvl1(two_level_image(8, 8), 1.9);
  const StepSizes s = Balanced(p);
  return MakeCase("tvl1", std::move(p), s);
}

inline Case SvmCase() {
  const LabeledData d = synthetic_svm(10, 5, 1);
  SaddleProblem p = build_svm(d.X, d.labels, true);
  const StepSizes s = Balanced(p);
  return MakeCase("svm", std::move(p), s);
}

inline const std::vector<Case>& AllCases() {
  static const std::vector<Case> cases = [] {
    std::vector<Case> c;
    c.push_back(ToyCase());
    c.push_back(SmallLpCase());
    c.push_back(RidgeCase());
    c.push_back(TvL1Case());
    c.push_back(SvmCase());
    return c;
  }();
  return cases;
}

inline Vec RandomVec(std::mt19937_64& rng, Index n, double scale = 1.0) {
  std::normal_distribution<double> N(0.0, scale);
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = N(rng);
  return v;
}

// A random point in the domain of f and g*, near z_star.
inline PrimalDualPoint RandomFeasible(std::mt19937_64& rng, const Case& c,
                                      double scale = 1.0) {
  PrimalDualPoint z{c.z_star.x + RandomVec(rng, c.problem.n(), scale),
                    c.z_star.y + RandomVec(rng, c.problem.m(), scale)};
  // A very short prox step projects onto the domain.
  z.x = prox(*c.problem.f, z.x, 1e-12);
  z.y = prox(*c.problem.gstar, z.y, 1e-12);
  return z;
}

}  // namespace rapdhg::testing

#endif  // RAPDHG_TESTS_SUPPORT_H_
