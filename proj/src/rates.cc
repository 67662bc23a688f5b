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

#include <algorithm>
#include <cmath>
#include <limits>

namespace rapdhg {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

void Require(bool ok, const char* what) {
  if (!ok) throw CertificateError(what);
}

void CheckUnit(double v, const char* name) {
  if (!(v >= 0.0) || !(v < 1.0)) {
    throw CertificateError(std::string(name) + " must lie in [0, 1)");
  }
}

double CheckFactor(double factor, const char* name) {
  if (!(factor > 0.0) || !(factor <= 1.0)) {
    throw CertificateError(std::string(name) +
                           ": factor outside (0, 1]: " + std::to_string(factor));
  }
  return factor;
}

double Inverse(double beta) { return std::isinf(beta) ? 0.0 : 1.0 / beta; }

}  // namespace

double averaging_lambda(double gamma, double alpha_f, double alpha_g) {
  CheckUnit(gamma, "gamma");
  CheckUnit(alpha_f, "alpha_f");
  CheckUnit(alpha_g, "alpha_g");
  const double c = (1.0 - gamma) * alpha_f - alpha_g;
  const double lambda =
      1.0 - alpha_f - (alpha_g - (1.0 - gamma) * alpha_f) / 2.0 -
      std::sqrt((1.0 - alpha_f) * (1.0 - alpha_f) * gamma + c * c / 4.0);
  if (!(lambda > 0.0)) {
    throw CertificateError("step sizes violate averagedness (lambda <= 0)");
  }
  return std::min(lambda, 1.0);
}

double a2_const(double alpha_f, double alpha_g, double gamma) {
  Require(alpha_f < 1.0, "a2: alpha_f must be < 1");
  Require(alpha_g + gamma < 1.0, "a2: alpha_g + gamma must be < 1");
  return std::max((2.0 * alpha_f - 1.0) / (1.0 - alpha_f),
                  (2.0 * alpha_g - 1.0 + gamma) / (1.0 - alpha_g - gamma));
}

double rate_strconv(double mu, double lambda, double a2) {
  Require(mu >= 0.0, "rate_strconv: mu must be >= 0");
  Require(lambda > 0.0, "rate_strconv: lambda must be > 0");
  Require(2.0 + a2 > 0.0, "rate_strconv: 2 + a2 must be > 0");
  return CheckFactor(1.0 / (1.0 + mu / ((2.0 + a2) * (1.0 + mu / lambda))),
                     "rate_strconv");
}

double rate_strconv_affine(double mu_f, double l_total, double sigma_min,
                           double tau, double sigma, double lambda,
                           double a2) {
  Require(mu_f >= 0.0, "rate_strconv_affine: mu_f must be >= 0");
  Require(sigma_min >= 0.0, "rate_strconv_affine: sigma_min must be >= 0");
  Require(l_total >= 0.0, "rate_strconv_affine: L must be >= 0");
  Require(tau > 0.0 && sigma > 0.0, "rate_strconv_affine: bad steps");
  Require(lambda > 0.0, "rate_strconv_affine: lambda must be > 0");
  Require(2.0 + a2 > 0.0, "rate_strconv_affine: 2 + a2 must be > 0");
  const double eta =
      std::min(mu_f * tau,
               sigma * tau * sigma_min * sigma_min / (tau * l_total + 1.0 / lambda));
  return CheckFactor(1.0 / (1.0 + eta / ((2.0 + a2) * (1.0 + eta / lambda))),
                     "rate_strconv_affine");
}

double rate_msr(double eta, double lambda, double alpha_f, double alpha_g) {
  Require(eta >= 0.0, "rate_msr: eta must be >= 0");
  Require(lambda > 0.0, "rate_msr: lambda must be > 0");
  const double d = std::sqrt(3.0) * eta +
                   (2.0 + 2.0 * std::sqrt(3.0) * std::max(alpha_f, alpha_g));
  return CheckFactor(1.0 - eta * eta * lambda / (d * d), "rate_msr");
}

double rate_qebsm(double eta, double lambda, double a2, double beta_x,
                  double beta_y) {
  Require(eta >= 0.0, "rate_qebsm: eta must be >= 0");
  Require(lambda > 0.0, "rate_qebsm: lambda must be > 0");
  Require(beta_x > 0.0 && beta_y > 0.0, "rate_qebsm: beta must be > 0");
  const double big_lambda =
      lambda / std::max((1.0 + a2) * lambda + Inverse(beta_x),
                        (2.0 + a2) * lambda + Inverse(beta_y));
  if (!(big_lambda > 0.0) || !(big_lambda <= 1.0)) {
    throw CertificateError("rate_qebsm: Lambda outside (0, 1]");
  }
  return CheckFactor(1.0 / (1.0 + big_lambda * eta / (1.0 + eta / lambda)),
                     "rate_qebsm");
}

RestartPeriod restart_period(double beta, double eta, double a2) {
  Require(beta > 0.0 && std::isfinite(beta), "restart_period: beta > 0");
  Require(eta > 0.0, "restart_period: eta > 0");
  const double raw =
      std::max(2.0 / beta, 2.0 * (2.0 + std::max(0.0, a2)) / eta);
  // Absorb representation error so that e.g. 2 / 0.01 gives 200, not 201.
  const double k = std::ceil(raw * (1.0 - 1e-12));
  Require(k < 9.0e18, "restart_period: K overflows");
  RestartPeriod out;
  out.K = std::max<std::int64_t>(1, static_cast<std::int64_t>(k));
  out.epoch_rate = std::pow(2.0, -1.0 / static_cast<double>(out.K));
  return out;
}

std::vector<double> default_slowfast_grid(double eta_x, int points) {
  Require(eta_x > 0.0 && eta_x < 1.0, "slow-fast grid: eta_x in (0, 1)");
  Require(points >= 1, "slow-fast grid: need at least one point");
  const double lo = 1e-4;
  const double hi = 1.0 - std::sqrt(eta_x);
  std::vector<double> grid;
  if (!(hi > lo)) return grid;
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 1; i <= points; ++i) {
    grid.push_back(std::exp(llo + (lhi - llo) * i / (points + 1)));
  }
  return grid;
}

SlowFastResult rate_slowfast(const SlowFastInputs& in) {
  Require(in.eta_x > 0.0 && in.eta_x < 1.0,
          "slow-fast certificate inapplicable: eta_x must lie in (0, 1)");
  Require(in.eta_y >= 0.0, "slow-fast: eta_y must be >= 0");
  Require(in.mu_f >= 0.0, "slow-fast: mu_f must be >= 0");
  Require(in.gamma > 0.0, "slow-fast: gamma must be > 0");
  Require(in.lambda > 0.0, "slow-fast: lambda must be > 0");
  Require(in.tau > 0.0 && in.sigma > 0.0, "slow-fast: bad steps");
  Require(in.beta_x > 0.0 && in.beta_y > 0.0, "slow-fast: beta must be > 0");
  const double inv_bx = Inverse(in.beta_x);
  const double inv_by = Inverse(in.beta_y);
  const double sqrt_ex = std::sqrt(in.eta_x);
  if (inv_bx < inv_by + sqrt_ex - in.eta_x) {
    throw CertificateError(
        "slow-fast certificate inapplicable: need 1/beta_x >= 1/beta_y + "
        "sqrt(eta_x) - eta_x");
  }
  const std::vector<double> grid =
      in.C_grid.empty() ? default_slowfast_grid(in.eta_x) : in.C_grid;
  const double ms = 2.0 * in.mu_f * in.sigma * in.tau;
  const double alpha1 = ms / (ms + in.lambda);
  const double d = 2.0 * in.mu_f * in.tau * (1.0 - alpha1);

  SlowFastResult result;
  bool found = false;
  for (double c : grid) {
    SlowFastCandidate cand;
    cand.C = c;
    if (!(c > 0.0) || !(c < 1.0 - sqrt_ex)) {
      result.candidates.push_back(cand);
      continue;
    }
    const double cex = c * in.eta_x;
    double rho = kInfinity;
    if (d <= cex) {
      cand.case_label = 1;
      cand.lambda1 = 0.0;
      cand.lambda4 = inv_bx / in.lambda + in.a2;
      rho = std::max(1.0 / (1.0 + cex / (1.0 + cand.lambda4)),
                     1.0 / (1.0 + in.eta_y / (1.0 + cand.lambda4)));
    } else {
      const double lambda3 =
          (1.0 - sqrt_ex - c) * in.eta_x / (2.0 * in.gamma * (1.0 - sqrt_ex));
      const double lambda1 = (-inv_by + lambda3 - c * sqrt_ex + inv_bx) / d;
      const double threshold = (inv_bx + in.a2 * in.lambda) / (d - cex);
      if (threshold > lambda1) {
        cand.case_label = 2;
        cand.lambda1 = lambda1;
        cand.lambda4 = (inv_bx - lambda1 * (d - cex)) / in.lambda + in.a2;
        rho = std::max(1.0 / (1.0 + cex / (1.0 + cand.lambda4)),
                       1.0 / (1.0 + in.eta_y / (1.0 + cand.lambda4)));
      } else {
        cand.case_label = 3;
        cand.lambda1 = threshold;
        cand.lambda4 = 0.0;
        rho = std::max(1.0 / (1.0 + cex), 1.0 / (1.0 + in.eta_y));
      }
    }
    if (cand.lambda1 < 0.0 || cand.lambda4 < 0.0 || !(rho > 0.0) ||
        !(rho <= 1.0)) {
      cand.case_label = 0;
      result.candidates.push_back(cand);
      continue;
    }
    cand.rho = rho;
    if (!found || rho < result.rho) {
      found = true;
      result.rho = rho;
      result.C = c;
      result.case_label = cand.case_label;
      result.lambda1 = cand.lambda1;
      result.lambda4 = cand.lambda4;
    }
    result.candidates.push_back(cand);
  }
  if (!found) {
    throw CertificateError(
        "slow-fast certificate inapplicable: no admissible C in the grid");
  }
  return result;
}

ToyEtaPair toy_qeb_eta_pair(double mu, double a, double tau, double sigma,
                            double beta_x, double beta_y) {
  Require(tau > 0.0 && sigma > 0.0, "toy_qeb_eta: steps must be positive");
  Require(mu >= 0.0, "toy_qeb_eta: mu must be >= 0");
  Require(beta_x >= 0.0 && beta_y >= 0.0, "toy_qeb_eta: beta must be >= 0");
  const double sta = sigma * tau * a * a;
  ToyEtaPair out;
  out.eta_x = mu * tau + (std::isinf(beta_y) ? 0.0 : sta / beta_y);
  out.eta_y = std::isinf(beta_x) ? 0.0 : sta / (beta_x + mu * tau);
  return out;
}

double toy_qeb_eta(double mu, double a, double tau, double sigma,
                   double beta_x, double beta_y) {
  const ToyEtaPair p = toy_qeb_eta_pair(mu, a, tau, sigma, beta_x, beta_y);
  return std::min(p.eta_x, p.eta_y);
}

double toy_msr_eta(double mu, double a, double tau, double sigma) {
  Require(tau > 0.0 && sigma > 0.0, "toy_msr_eta: steps must be positive");
  Require(mu >= 0.0, "toy_msr_eta: mu must be >= 0");
  const double mt = mu * tau;
  return (std::sqrt(mt * mt + 4.0 * sigma * tau * a * a) - mt) / 2.0;
}

RateCertificate certify(const RateInputs& in) {
  RateCertificate cert;
  cert.lambda = averaging_lambda(in.gamma, in.alpha_f, in.alpha_g);
  cert.a2 = a2_const(in.alpha_f, in.alpha_g, in.gamma);
  if (in.mu) cert.factors["strconv"] = rate_strconv(*in.mu, cert.lambda, cert.a2);
  if (in.mu_f && in.sigma_min && in.tau && in.sigma) {
    cert.factors["strconv_affine"] = rate_strconv_affine(
        *in.mu_f, in.l_total.value_or(0.0), *in.sigma_min, *in.tau, *in.sigma,
        cert.lambda, cert.a2);
  }
  if (in.eta_msr) {
    cert.factors["msr"] =
        rate_msr(*in.eta_msr, cert.lambda, in.alpha_f, in.alpha_g);
  }
  if (in.eta) {
    cert.factors["qebsm"] =
        rate_qebsm(*in.eta, cert.lambda, cert.a2, in.beta_x.value_or(kInfinity),
                   in.beta_y.value_or(kInfinity));
  }
  return cert;
}

}  // namespace rapdhg
