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

#include "rapdhg/problems.h"

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include <gtest/gtest.h>

#include "rapdhg/gap.h"
#include "rapdhg/oracles.h"
#include "support.h"

namespace rapdhg {
namespace {

TEST(SmallLp, SaddlePoint) {
  const auto& c = testing::AllCases()[1];
  Vec xs(4), ys(3);
  xs << 10, 0, 3.5, 0;
  ys << 2, 3, 0;
  EXPECT_LT((c.z_star.x - xs).norm(), 1e-9);
  EXPECT_LT((c.z_star.y - ys).norm(), 1e-9);
  EXPECT_NEAR(small_lp().c.dot(c.z_star.x), -133.0, 1e-8);
  EXPECT_NEAR(c.problem.A.norm_estimate().value, 11.7334265, 1e-6);
}

TEST(BuildLp, LagrangianMatchesLinearForm) {
  const LPDescription lp = small_lp();
  const SaddleProblem p = build_lp(lp);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int i = 0; i < 20; ++i) {
    Vec x(4), y(3);
    for (Index j = 0; j < 4; ++j) x[j] = u(rng);
    for (Index j = 0; j < 3; ++j) y[j] = u(rng);
    const double expected = lp.c.dot(x) + y.dot(lp.A * x - lp.b);
    EXPECT_NEAR(p.Lagrangian(x, y), expected, 1e-12 * (1 + std::abs(expected)));
  }
}

TEST(BuildLp, PrimalProxClamps) {
  LPDescription lp;
  Eigen::MatrixXd a(1, 2);
  a << 1, 1;
  lp.A = a.sparseView();
  lp.b = Vec::Zero(1);
  lp.c = Vec::Zero(2);
  lp.E = {0};
  lp.F = {0};
  lp.N = {1};
  const SaddleProblem p = build_lp(lp);
  Vec v(2);
  v << 1, -1;
  const Vec x = prox(*p.f, v, 1.0);
  EXPECT_EQ(x[0], 1.0);
  EXPECT_EQ(x[1], 0.0);
}

TEST(BuildLp, RejectsBadPartition) {
  LPDescription lp = small_lp();
  lp.N = {0, 1};
  lp.F = {1, 2, 3};
  EXPECT_THROW(build_lp(lp), std::invalid_argument);
}

TEST(Ridge, Metadata) {
  const RidgeData d = synthetic_ridge(20, 10, 1);
  const SaddleProblem p = build_ridge(d.A, d.b, 50.0);
  EXPECT_EQ(*p.metadata.mu_f, 100.0);
  EXPECT_EQ(*p.metadata.mu_gstar, 1.0);
  EXPECT_EQ(p.n(), 10);
  EXPECT_EQ(p.m(), 20);
}

TEST(Ridge, ZeroDataHasZeroSolution) {
  const SaddleProblem p =
      build_ridge(Eigen::MatrixXd::Zero(3, 2), Vec::Zero(3), 50.0);
  const StepSizes s = StepSizes::ForProblem(p, 1.0, 1.0);
  const ReferenceSolution r = reference_solve(p, s);
  EXPECT_EQ(r.z.x.norm(), 0.0);
  EXPECT_EQ(r.z.y.norm(), 0.0);
}

TEST(Ridge, SolutionMatchesNormalEquations) {
  const auto& c = testing::AllCases()[2];
  const RidgeData d = synthetic_ridge(20, 10, 1);
  // min 50|x|^2 + |Ax - b|^2 / 2.
  const Eigen::MatrixXd h =
      d.A.transpose() * d.A + 100.0 * Eigen::MatrixXd::Identity(10, 10);
  const Vec x = h.ldlt().solve(d.A.transpose() * d.b);
  EXPECT_LT((c.z_star.x - x).norm(), 1e-10);
}

TEST(Svm, SingleSample) {
  SparseMatrix x(1, 1);
  x.insert(0, 0) = 1.0;
  const SaddleProblem p = build_svm(x, Vec::Ones(1), false);
  const Vec w = Vec::Ones(1);
  // Hinge of the margin 1 is zero.
  EXPECT_EQ(*p.gstar->Conjugate(p.A.Apply(w)), 0.0);
  EXPECT_EQ(prox(*p.gstar, Vec::Zero(1), 1.0)[0], -1.0);
}

TEST(Svm, ZeroWeightsCostOnePerSample) {
  const LabeledData d = synthetic_svm(10, 5, 1);
  const SaddleProblem p = build_svm(d.X, d.labels, true);
  EXPECT_EQ(p.PrimalValue(Vec::Zero(p.n())) +
                *p.gstar->Conjugate(p.A.Apply(Vec::Zero(p.n()))),
            10.0);
}

TEST(Svm, NormalizedColumns) {
  const LabeledData d = synthetic_svm(10, 5, 1);
  const SaddleProblem p = build_svm(d.X, d.labels, true);
  const Eigen::MatrixXd a = *p.A.ToDense();
  for (Index j = 0; j < a.cols(); ++j) {
    EXPECT_NEAR(a.col(j).norm(), 1.0, 1e-12);
  }
}

TEST(Svm, SolvedObjectiveBelowSampleCount) {
  const auto& c = testing::AllCases()[4];
  const double obj = c.problem.PrimalValue(c.z_star.x) +
                     *c.problem.gstar->Conjugate(c.problem.A.Apply(c.z_star.x));
  EXPECT_LE(obj, 10.0);
  EXPECT_LT(kkt_residual(c.problem, c.z_star, c.steps).total(), 1e-11);
}

TEST(Svm, RejectsNonBinaryLabels) {
  const LabeledData d = synthetic_svm(4, 2, 1);
  Vec labels = d.labels;
  labels[0] = 0.5;
  EXPECT_THROW(build_svm(d.X, labels, true), std::invalid_argument);
}

TEST(TvL1, ConstantImageIsFixed) {
  Field2D img{4, 4, Vec::Constant(16, 0.3)};
  const SaddleProblem p = build_tvl1(img, 1.9);
  StepOptions o;
  const StepSizes s = default_steps(p, o);
  const ReferenceSolution r = reference_solve(p, s);
  EXPECT_LT((r.z.x - img.values).lpNorm<Eigen::Infinity>(), 1e-10);
}

TEST(TvL1, MajorityOfPixelsUnchanged) {
  const auto& c = testing::AllCases()[3];
  const Field2D img = two_level_image(8, 8);
  int unchanged = 0;
  for (Index i = 0; i < 64; ++i) {
    unchanged += std::abs(c.z_star.x[i] - img.values[i]) < 1e-6;
  }
  EXPECT_GT(unchanged, 32);
  EXPECT_EQ(unchanged, 61);
}

TEST(TvL1, DualProxProjectsPixelVectors) {
  const SaddleProblem p = build_tvl1(two_level_image(2, 2), 1.0);
  Vec v = Vec::Zero(8);
  v[2] = 2.0;
  const Vec q = prox(*p.gstar, v, 1.0);
  EXPECT_NEAR(q[2], 1.0, 1e-15);
  EXPECT_EQ(q[3], 0.0);
}

TEST(AllProblems, AdjointConsistencyAndConvergence) {
  std::mt19937_64 rng(6);
  for (const auto& c : testing::AllCases()) {
    const Vec x = testing::RandomVec(rng, c.problem.n());
    const Vec y = testing::RandomVec(rng, c.problem.m());
    EXPECT_NEAR(c.problem.A.Apply(x).dot(y), x.dot(c.problem.A.Adjoint(y)),
                1e-11)
        << c.name;
    EXPECT_LT(kkt_residual(c.problem, c.z_star, c.steps).total(), 1e-11)
        << c.name;
  }
}

TEST(Fingerprint, DistinguishesData) {
  EXPECT_NE(build_toy({.mu = 0.1}).metadata.fingerprint,
            build_toy({.mu = 0.2}).metadata.fingerprint);
  const RidgeData a = synthetic_ridge(5, 3, 1);
  const RidgeData b = synthetic_ridge(5, 3, 2);
  EXPECT_NE(build_ridge(a.A, a.b, 1.0).metadata.fingerprint,
            build_ridge(b.A, b.b, 1.0).metadata.fingerprint);
  EXPECT_EQ(build_ridge(a.A, a.b, 1.0).metadata.fingerprint,
            build_ridge(a.A, a.b, 1.0).metadata.fingerprint);
}

}  // namespace
}  // namespace rapdhg
