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

#include "rapdhg/rates.h"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

namespace rapdhg {
namespace {

constexpr double kInfBeta = std::numeric_limits<double>::infinity();

TEST(AveragingLambda, ClosedForms) {
  EXPECT_DOUBLE_EQ(averaging_lambda(0.0, 0.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(averaging_lambda(0.25, 0.0, 0.0), 0.5);
  EXPECT_NEAR(averaging_lambda(0.25, 0.5, 0.0), 0.375, 1e-15);
  EXPECT_NEAR(averaging_lambda(0.5, 0.0, 0.0), 1.0 - std::sqrt(0.5), 1e-15);
}

TEST(AveragingLambda, RejectsBadSteps) {
  EXPECT_THROW(averaging_lambda(1.0, 0.0, 0.0), CertificateError);
  EXPECT_THROW(averaging_lambda(0.5, -0.1, 0.0), CertificateError);
  EXPECT_THROW(averaging_lambda(0.5, 0.0, 1.0), CertificateError);
}

TEST(A2Const, Values) {
  EXPECT_DOUBLE_EQ(a2_const(0.0, 0.0, 0.0), -1.0);
  EXPECT_DOUBLE_EQ(a2_const(0.5, 0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(a2_const(0.75, 0.0, 0.0), 2.0);
  EXPECT_DOUBLE_EQ(a2_const(0.0, 0.25, 0.25), -0.5);
  EXPECT_THROW(a2_const(0.0, 0.5, 0.5), CertificateError);
}

TEST(RateStrconv, Values) {
  EXPECT_NEAR(rate_strconv(1.0, 1.0, -1.0), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(rate_strconv(1.0 / 3.0, 1.0, 0.0), 8.0 / 9.0, 1e-15);
  EXPECT_DOUBLE_EQ(rate_strconv(0.0, 0.5, 0.0), 1.0);
  EXPECT_THROW(rate_strconv(-1.0, 1.0, 0.0), CertificateError);
  EXPECT_THROW(rate_strconv(1.0, 1.0, -2.0), CertificateError);
}

TEST(RateStrconvAffine, Values) {
  // eta = min(mu tau, sigma tau smin^2 / (tau L + 1 / lambda)) = 0.2.
  EXPECT_NEAR(rate_strconv_affine(0.2, 0.0, 1.0, 1.0, 1.0, 1.0, 0.0),
              1.0 / (1.0 + 0.2 / 2.4), 1e-15);
  EXPECT_NEAR(rate_strconv_affine(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, -1.0), 0.75,
              1e-15);
  EXPECT_DOUBLE_EQ(rate_strconv_affine(1.0, 0.0, 0.0, 1.0, 1.0, 1.0, 0.0),
                   1.0);
}

TEST(RateMsr, Values) {
  EXPECT_NEAR(rate_msr(0.03, 1.0, 0.0, 0.0), 0.9997862510041962, 1e-15);
  EXPECT_DOUBLE_EQ(rate_msr(0.0, 1.0, 0.0, 0.0), 1.0);
  EXPECT_LT(rate_msr(0.03, 1.0, 0.0, 0.0), rate_msr(0.03, 0.5, 0.0, 0.0));
  EXPECT_LT(rate_msr(0.03, 1.0, 0.0, 0.0), rate_msr(0.03, 1.0, 0.4, 0.0));
}

TEST(RateQebsm, Values) {
  EXPECT_NEAR(rate_qebsm(1.0, 1.0, -1.0, 1.0, 1.0), 0.8, 1e-15);
  EXPECT_NEAR(rate_qebsm(0.1, 0.5, 0.0, 10.0, 10.0), 0.9635036496350365,
              1e-15);
  EXPECT_THROW(rate_qebsm(0.1, 1.0, 0.0, 0.0, 1.0), CertificateError);
}

TEST(RateQebsm, MatchesStrconvWithoutSmoothing) {
  for (double mu : {0.01, 0.1, 1.0}) {
    for (double lambda : {0.3, 1.0}) {
      for (double a2 : {-1.0, 0.0, 1.5}) {
        EXPECT_NEAR(rate_qebsm(mu, lambda, a2, kInfBeta, kInfBeta),
                    rate_strconv(mu, lambda, a2), 1e-14);
      }
    }
  }
}

TEST(RateQebsm, MonotoneInBeta) {
  double prev = 1.0;
  for (double beta : {0.01, 0.1, 1.0, 10.0, kInfBeta}) {
    const double r = rate_qebsm(0.05, 0.9, 0.0, beta, beta);
    EXPECT_LE(r, prev);
    prev = r;
  }
}

TEST(RestartPeriod, Values) {
  EXPECT_EQ(restart_period(0.01, 1.0, 0.0).K, 200);
  EXPECT_EQ(restart_period(1.0, 4.0, 0.0).K, 2);
  EXPECT_EQ(restart_period(1.0, 8.0, 2.0).K, 2);
  EXPECT_EQ(restart_period(1.0, 1.0, -1.0).K, 4);
  EXPECT_EQ(restart_period(0.01, 0.01, 0.0).K, 400);
  EXPECT_NEAR(restart_period(0.01, 1.0, 0.0).epoch_rate,
              std::pow(2.0, -1.0 / 200.0), 1e-15);
  EXPECT_THROW(restart_period(0.0, 1.0, 0.0), CertificateError);
  EXPECT_THROW(restart_period(1.0, 0.0, 0.0), CertificateError);
}

TEST(ToyEta, Qeb) {
  EXPECT_DOUBLE_EQ(toy_qeb_eta(0.0, 0.03, 1.0, 1.0, 1.0, 1.0), 9e-4);
  EXPECT_NEAR(toy_qeb_eta(0.0, 0.03, 1.0, 1.0, 2.0, 2.0), 4.5e-4, 1e-18);
  const ToyEtaPair p = toy_qeb_eta_pair(0.01, 0.03, 1.0, 1.0, 1.0, 1.0);
  EXPECT_NEAR(p.eta_x, 0.0109, 1e-15);
  EXPECT_NEAR(p.eta_y, 9e-4 / 1.01, 1e-15);
  const ToyEtaPair q =
      toy_qeb_eta_pair(0.01, 0.03, 1.0, 1.0, kInfBeta, kInfBeta);
  EXPECT_DOUBLE_EQ(q.eta_x, 0.01);
  EXPECT_DOUBLE_EQ(q.eta_y, 0.0);
}

TEST(ToyEta, Msr) {
  EXPECT_NEAR(toy_msr_eta(0.0, 0.03, 1.0, 1.0), 0.03, 1e-15);
  EXPECT_DOUBLE_EQ(toy_msr_eta(0.5, 0.0, 1.0, 1.0), 0.0);
  EXPECT_NEAR(toy_msr_eta(1.0, 0.03, 1.0, 1.0), 8.99191e-4, 1e-9);
  EXPECT_THROW(toy_msr_eta(-1.0, 0.03, 1.0, 1.0), CertificateError);
}

SlowFastInputs ToySlowFast(double mu, double beta_x, double beta_y) {
  const double a = 0.03;
  const double gamma = a * a;
  const double alpha_f = mu / 2.0;
  const ToyEtaPair eta = toy_qeb_eta_pair(mu, a, 1.0, 1.0, beta_x, beta_y);
  SlowFastInputs in;
  in.mu_f = mu;
  in.eta_x = eta.eta_x;
  in.eta_y = eta.eta_y;
  in.beta_x = beta_x;
  in.beta_y = beta_y;
  in.gamma = gamma;
  in.lambda = averaging_lambda(gamma, alpha_f, 0.0);
  in.a2 = a2_const(alpha_f, 0.0, gamma);
  return in;
}

TEST(RateSlowFast, ToyCertificate) {
  const SlowFastResult r = rate_slowfast(ToySlowFast(0.01, 1.0, 10.0));
  EXPECT_GT(r.rho, 0.0);
  EXPECT_LT(r.rho, 1.0);
  EXPECT_GE(r.case_label, 1);
  EXPECT_LE(r.case_label, 3);
  EXPECT_EQ(r.candidates.size(), 64u);
  for (const SlowFastCandidate& c : r.candidates) {
    if (c.rho) EXPECT_GE(*c.rho, r.rho);
  }
}

TEST(RateSlowFast, Inapplicable) {
  SlowFastInputs in = ToySlowFast(0.01, 1.0, 10.0);
  in.eta_x = 0.0;
  EXPECT_THROW(rate_slowfast(in), CertificateError);
  EXPECT_THROW(rate_slowfast(ToySlowFast(0.01, 1.0, 1.0)), CertificateError);
  in = ToySlowFast(0.01, 1.0, 10.0);
  in.beta_x = 1e6;
  in.beta_y = 1e-3;
  EXPECT_THROW(rate_slowfast(in), CertificateError);
  in = ToySlowFast(0.01, 1.0, 10.0);
  in.C_grid = {2.0};
  EXPECT_THROW(rate_slowfast(in), CertificateError);
}

TEST(DefaultSlowFastGrid, InsideInterval) {
  const std::vector<double> g = default_slowfast_grid(0.04, 16);
  ASSERT_EQ(g.size(), 16u);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_GT(g[i], 1e-4);
    EXPECT_LT(g[i], 0.8);
    if (i > 0) EXPECT_GT(g[i], g[i - 1]);
  }
}

TEST(Certify, CollectsAvailableFactors) {
  RateInputs in;
  in.gamma = 0.25;
  in.mu = 0.1;
  in.eta = 0.1;
  in.eta_msr = 0.03;
  const RateCertificate c = certify(in);
  EXPECT_DOUBLE_EQ(c.lambda, 0.5);
  EXPECT_DOUBLE_EQ(c.a2, -1.0);
  EXPECT_EQ(c.factors.size(), 3u);
  EXPECT_NEAR(c.factors.at("qebsm"), c.factors.at("strconv"), 1e-15);
  EXPECT_EQ(c.factors.count("strconv_affine"), 0u);
}

TEST(Certify, FrozenToyValues) {
  // Toy problem with mu = 0, a = 0.03 and unit steps.
  RateInputs in;
  in.gamma = 9e-4;
  in.eta_msr = toy_msr_eta(0.0, 0.03, 1.0, 1.0);
  const RateCertificate c = certify(in);
  EXPECT_NEAR(c.factors.at("msr"), 0.99979266, 5e-9);
}

}  // namespace
}  // namespace rapdhg
