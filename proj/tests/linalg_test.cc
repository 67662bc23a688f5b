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

#include "rapdhg/linalg.h"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

namespace rapdhg {
namespace {

TEST(VNorm, KnownValues) {
  EXPECT_EQ(v_norm(PrimalDualPoint::Zero(2, 1), VNormParams(1, 1)), 0.0);
  PrimalDualPoint z{Vec::Zero(2), Vec::Zero(1)};
  z.x << 2, 0;
  z.y << 3;
  EXPECT_NEAR(v_norm(z, VNormParams(4, 1)), std::sqrt(10.0), 1e-15);
  PrimalDualPoint w{Vec::Ones(1), Vec::Ones(1)};
  EXPECT_NEAR(v_norm(w, VNormParams(2, 0.5)), std::sqrt(2.5), 1e-15);
  EXPECT_NEAR(v_norm_squared(w, VNormParams(2, 0.5)), 2.5, 1e-15);
  EXPECT_NEAR(v_dist(w, PrimalDualPoint::Zero(1, 1), VNormParams(2, 0.5)),
              std::sqrt(2.5), 1e-15);
}

TEST(VNorm, RejectsNonpositiveSteps) {
  EXPECT_THROW(VNormParams(0, 1), std::invalid_argument);
  EXPECT_THROW(VNormParams(1, -1), std::invalid_argument);
}

TEST(PrimalDualPoint, Arithmetic) {
  PrimalDualPoint a{Vec::Constant(2, 1.0), Vec::Constant(1, 2.0)};
  PrimalDualPoint b{Vec::Constant(2, 0.5), Vec::Constant(1, 1.0)};
  const PrimalDualPoint s = a + b;
  EXPECT_EQ(s.x[1], 1.5);
  EXPECT_EQ(s.y[0], 3.0);
  const PrimalDualPoint d = 2.0 * (a - b);
  EXPECT_EQ(d.x[0], 1.0);
  EXPECT_EQ(d.y[0], 2.0);
  EXPECT_TRUE(a == a);
  EXPECT_FALSE(a == b);
}

TEST(NormEstimate, Identity) {
  const LinOp id = LinOp::Dense(Eigen::MatrixXd::Identity(3, 3));
  EXPECT_NEAR(id.norm_estimate().value, 1.0, 1e-6);
  EXPECT_TRUE(id.norm_estimate().converged);
  EXPECT_NEAR(id.norm_bound(), 1.01 * id.norm_estimate().value, 1e-15);
}

TEST(NormEstimate, Scalar) {
  Eigen::MatrixXd a(1, 1);
  a << 0.03;
  EXPECT_NEAR(LinOp::Dense(a).norm_estimate().value, 0.03, 1e-9);
}

TEST(NormEstimate, ZeroOperator) {
  const LinOp z = LinOp::Dense(Eigen::MatrixXd::Zero(2, 3));
  EXPECT_EQ(z.norm_estimate().value, 0.0);
}

TEST(NormEstimate, GradientAgainstEigendecomposition) {
  const LinOp g = LinOp::Grad2D(8, 8);
  const Eigen::MatrixXd d = *g.ToDense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d.transpose() * d);
  const double exact = std::sqrt(es.eigenvalues().maxCoeff());
  const double est = g.norm_estimate().value;
  EXPECT_GT(est, 2.7);
  EXPECT_LE(est, std::sqrt(8.0));
  EXPECT_NEAR(est, exact, 1e-4 * exact);
}

TEST(NormEstimate, SparseMatchesDense) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0, 1);
  Eigen::MatrixXd a(6, 4);
  for (Index i = 0; i < a.size(); ++i) a.data()[i] = n(rng);
  const double dense = LinOp::Dense(a).norm_estimate().value;
  const double sparse =
      LinOp::Sparse(a.sparseView().cast<double>()).norm_estimate().value;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  EXPECT_NEAR(dense, svd.singularValues()[0], 1e-5);
  EXPECT_NEAR(sparse, dense, 1e-9);
}

TEST(LinOp, AdjointConsistency) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0, 1);
  Eigen::MatrixXd a(5, 3);
  for (Index i = 0; i < a.size(); ++i) a.data()[i] = n(rng);
  for (const LinOp& op :
       {LinOp::Dense(a), LinOp::Sparse(a.sparseView()), LinOp::Grad2D(4, 5)}) {
    for (int trial = 0; trial < 10; ++trial) {
      Vec x(op.cols()), y(op.rows());
      for (Index i = 0; i < x.size(); ++i) x[i] = n(rng);
      for (Index i = 0; i < y.size(); ++i) y[i] = n(rng);
      EXPECT_NEAR(op.Apply(x).dot(y), x.dot(op.Adjoint(y)), 1e-12);
    }
  }
}

TEST(LinOp, DimensionMismatchThrows) {
  const LinOp op = LinOp::Dense(Eigen::MatrixXd::Ones(2, 3));
  EXPECT_THROW(op.Apply(Vec::Ones(2)), std::invalid_argument);
  EXPECT_THROW(op.Adjoint(Vec::Ones(3)), std::invalid_argument);
}

TEST(LinOp, SigmaMin) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(0, 0) = 3.0;
  a(1, 1) = 0.5;
  EXPECT_NEAR(*LinOp::Dense(a).SigmaMin(), 0.5, 1e-14);
}

TEST(Grad2D, ConstantImageHasZeroGradient) {
  EXPECT_EQ(grad2d(Vec::Constant(12, 4.2), 3, 4).lpNorm<Eigen::Infinity>(),
            0.0);
}

TEST(Grad2D, SingleStep) {
  Vec u(2);
  u << 0, 1;
  const Vec g = grad2d(u, 1, 2);
  ASSERT_EQ(g.size(), 4);
  EXPECT_EQ(g[0], 1.0);  // horizontal difference at (0, 0)
  EXPECT_EQ(g[1], 0.0);
  EXPECT_EQ(g[2], 0.0);
  EXPECT_EQ(g[3], 0.0);
}

TEST(Grad2D, VerticalDifference) {
  Vec u(4);
  u << 0, 0, 2, 5;  // 2 x 2, row-major
  const Vec g = grad2d(u, 2, 2);
  EXPECT_EQ(g[1], 2.0);
  EXPECT_EQ(g[3], 5.0);
  EXPECT_EQ(g[2], 0.0);
  EXPECT_EQ(g[5], 0.0);
  EXPECT_EQ(g[7], 0.0);
}

TEST(Grad2D, AdjointIsNegativeDivergence) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0, 1);
  Vec u(15), p(30);
  for (Index i = 0; i < u.size(); ++i) u[i] = n(rng);
  for (Index i = 0; i < p.size(); ++i) p[i] = n(rng);
  EXPECT_NEAR(grad2d(u, 3, 5).dot(p), u.dot(grad2d_adjoint(p, 3, 5)), 1e-12);
}

}  // namespace
}  // namespace rapdhg
