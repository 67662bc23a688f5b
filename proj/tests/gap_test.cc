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

#include "rapdhg/gap.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "rapdhg/oracles.h"
#include "support.h"

namespace rapdhg {
namespace {

using testing::AllCases;

TEST(SmoothedGap, ToyHandExpansion) {
  const SaddleProblem p = build_toy({.mu = 0.0, .a = 1.0, .b = 0.0});
  const VNormParams s(0.5, 0.5);
  PrimalDualPoint z = PrimalDualPoint::Zero(1, 1);
  z.x[0] = 1.0;
  const PrimalDualPoint center = PrimalDualPoint::Zero(1, 1);
  EXPECT_NEAR(smoothed_gap(p, z, center, {1.0, 1.0}, s).value, 0.25, 1e-15);
}

TEST(SmoothedGap, ZeroAtSaddlePoint) {
  for (const auto& c : AllCases()) {
    for (double beta : {0.001, 0.1, 1.0, kInf}) {
      EXPECT_NEAR(smoothed_gap(c.problem, c.z_star, c.z_star,
                               SmoothParams::Scalar(beta), c.steps)
                      .value,
                  0.0, 1e-10)
          << c.name << " beta " << beta;
    }
  }
}

TEST(SmoothedGap, OrderingInBeta) {
  std::mt19937_64 rng(21);
  for (const auto& c : AllCases()) {
    for (int i = 0; i < 20; ++i) {
      const PrimalDualPoint z = testing::RandomFeasible(rng, c);
      double prev = kInf;
      for (double beta : {0.0, 0.01, 0.1, 1.0, kInf}) {
        const double g = smoothed_gap(c.problem, z, c.z_star,
                                      SmoothParams::Scalar(beta), c.steps)
                             .value;
        EXPECT_LE(g, prev + 1e-10) << c.name << " beta " << beta;
        EXPECT_GE(g, -1e-10) << c.name;
        prev = g;
      }
    }
  }
}

TEST(SmoothedGap, MaximizersAreProxPoints) {
  const auto& c = AllCases()[1];
  std::mt19937_64 rng(3);
  const PrimalDualPoint z = testing::RandomFeasible(rng, c);
  const double beta = 0.1;
  const GapReport r = smoothed_gap(c.problem, z, c.z_star,
                                   SmoothParams::Scalar(beta), c.steps);
  ASSERT_TRUE(r.maximizer_dual && r.maximizer_primal);
  const double ts = c.steps.sigma() / beta;
  const double tt = c.steps.tau() / beta;
  const Vec y_hat =
      prox(*c.problem.gstar, c.z_star.y + ts * c.problem.A.Apply(z.x), ts);
  const Vec x_hat =
      prox(*c.problem.f, c.z_star.x - tt * c.problem.A.Adjoint(z.y), tt);
  EXPECT_LT((*r.maximizer_dual - y_hat).norm(), 1e-12);
  EXPECT_LT((*r.maximizer_primal - x_hat).norm(), 1e-12);
}

TEST(SmoothedGap, UnsmoothedLpIsInfiniteWhenInfeasible) {
  const auto& c = AllCases()[1];
  PrimalDualPoint z = c.z_star;
  z.x[0] += 5.0;  // violates the first two constraints
  EXPECT_EQ(smoothed_gap(c.problem, z, c.z_star, {0.0, 0.0}, c.steps).value,
            kInf);
}

TEST(SmoothedGap, UnavailableForNonFoldableProblems) {
  SaddleProblem p = build_toy({.mu = 0.5});
  p.f_folded = nullptr;
  EXPECT_THROW(check_gap_available(p, SmoothParams::Scalar(1.0)),
               GapUnavailable);
}

TEST(SelfCenteredGap, NonnegativeAndZeroOnlyAtSolution) {
  std::mt19937_64 rng(5);
  for (const auto& c : AllCases()) {
    EXPECT_NEAR(self_centered_gap(c.problem, c.z_star,
                                  SmoothParams::Scalar(0.5), c.steps)
                    .value,
                0.0, 1e-10)
        << c.name;
    for (int i = 0; i < 20; ++i) {
      const PrimalDualPoint z = testing::RandomFeasible(rng, c);
      for (double beta : {0.0, 0.1, 1.0}) {
        const double g =
            self_centered_gap(c.problem, z, SmoothParams::Scalar(beta),
                              c.steps)
                .value;
        EXPECT_GT(g, 0.0) << c.name;
      }
    }
  }
}

TEST(SelfCenteredGap, DecreasesInBeta) {
  std::mt19937_64 rng(9);
  for (const auto& c : AllCases()) {
    const PrimalDualPoint z = testing::RandomFeasible(rng, c);
    EXPECT_GE(self_centered_gap(c.problem, z, {0.1, 0.1}, c.steps).value,
              self_centered_gap(c.problem, z, {1.0, 1.0}, c.steps).value -
                  1e-12)
        << c.name;
  }
}

TEST(KktResidual, ToyHandComputed) {
  const SaddleProblem p = build_toy({.mu = 0.0, .a = 0.03, .b = 0.0});
  const StepSizes s = StepSizes::ForProblem(p, 1.0, 1.0);
  PrimalDualPoint z = PrimalDualPoint::Zero(1, 1);
  z.x[0] = 1.0;
  const KktResidual r = kkt_residual(p, z, s);
  EXPECT_NEAR(r.primal, 0.0009, 1e-15);
  EXPECT_NEAR(r.dual, 0.03, 1e-15);
  EXPECT_NEAR(r.total(), std::hypot(0.0009, 0.03), 1e-15);
}

TEST(KktResidual, VanishesAlongSegmentToSolution) {
  const auto& c = AllCases()[0];
  PrimalDualPoint dir{Vec::Ones(1), Vec::Ones(1)};
  double prev = kInf;
  for (double t : {1.0, 0.5, 0.1, 0.01, 0.0}) {
    const double r =
        kkt_residual(c.problem, c.z_star + t * dir, c.steps).total();
    EXPECT_LE(r, prev);
    prev = r;
  }
  EXPECT_LT(prev, 1e-12);
}

TEST(RestrictedGap, Basics) {
  const SaddleProblem p = build_toy({.mu = 1.0, .a = 0.0, .b = 0.0});
  PrimalDualPoint z = PrimalDualPoint::Zero(1, 1);
  z.x[0] = 1.0;
  EXPECT_NEAR(restricted_gap(p, z, {PrimalDualPoint::Zero(1, 1)}), 0.5,
              1e-15);
  const auto& c = AllCases()[1];
  EXPECT_NEAR(restricted_gap(c.problem, c.z_star, {c.z_star}), 0.0, 1e-9);
  PrimalDualPoint bad = c.z_star;
  bad.x[0] = -1.0;
  EXPECT_EQ(restricted_gap(c.problem, bad, {c.z_star}), kInf);
  EXPECT_THROW(restricted_gap(c.problem, c.z_star, {bad}),
               std::invalid_argument);
}

TEST(CenteringInequality, RandomCenters) {
  std::mt19937_64 rng(77);
  for (const auto& c : AllCases()) {
    for (int i = 0; i < 20; ++i) {
      const PrimalDualPoint z = testing::RandomFeasible(rng, c);
      const PrimalDualPoint center = testing::RandomFeasible(rng, c, 0.3);
      const double beta = 0.5;
      const double d = v_dist(center, c.z_star, c.steps);
      const double lhs =
          smoothed_gap(c.problem, z, center, SmoothParams::Scalar(beta),
                       c.steps)
              .value;
      const double rhs = smoothed_gap(c.problem, z, c.z_star,
                                      SmoothParams::Scalar(2 * beta), c.steps)
                             .value -
                         beta * d * d;
      EXPECT_GE(lhs, rhs - 1e-9) << c.name;
    }
  }
}

TEST(SmoothParams, Validation) {
  EXPECT_THROW(SmoothParams({-1.0, 1.0}).Validate(), std::invalid_argument);
  EXPECT_NO_THROW(SmoothParams({0.0, kInf}).Validate());
}

}  // namespace
}  // namespace rapdhg
