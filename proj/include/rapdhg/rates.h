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

#ifndef RAPDHG_RATES_H_
#define RAPDHG_RATES_H_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rapdhg {

// Raised when a formula's preconditions fail or its output leaves (0, 1].
class CertificateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Averagedness constant: T is 1/(1+lambda)-averaged in the V-norm.
double averaging_lambda(double gamma, double alpha_f, double alpha_g);

double a2_const(double alpha_f, double alpha_g, double gamma);

// Contraction factors below apply to the squared V-distance to the solution
// set, per iteration.

// Strong convex-concavity with modulus mu in the V-norm.
double rate_strconv(double mu, double lambda, double a2);

// Strongly convex f with affine constraints of smallest singular value
// sigma_min.
double rate_strconv_affine(double mu_f, double l_total, double sigma_min,
                           double tau, double sigma, double lambda, double a2);

// Metric subregularity of I - T with constant eta.
double rate_msr(double eta, double lambda, double alpha_f, double alpha_g);

// Quadratic error bound of the smoothed gap with constant eta; beta
// components may be +inf.
double rate_qebsm(double eta, double lambda, double a2, double beta_x,
                  double beta_y);

struct RestartPeriod {
  std::int64_t K = 0;
  double epoch_rate = 0.0;  // 2^(-1/K)
};
RestartPeriod restart_period(double beta, double eta, double a2);

struct SlowFastInputs {
  double mu_f = 0.0;
  double eta_x = 0.0;
  double eta_y = 0.0;
  double beta_x = 1.0;
  double beta_y = 1.0;
  double gamma = 0.0;
  double tau = 1.0;
  double sigma = 1.0;
  double lambda = 1.0;
  double a2 = -1.0;
  // Empty selects default_slowfast_grid(eta_x).
  std::vector<double> C_grid;
};

struct SlowFastCandidate {
  double C = 0.0;
  int case_label = 0;  // 1, 2 or 3; 0 when C admits no certificate
  std::optional<double> rho;
  double lambda1 = 0.0;
  double lambda4 = 0.0;
};

struct SlowFastResult {
  double rho = 1.0;
  double C = 0.0;
  int case_label = 0;
  double lambda1 = 0.0;
  double lambda4 = 0.0;
  std::vector<SlowFastCandidate> candidates;
};

// 64 log-spaced points strictly inside (1e-4, 1 - sqrt(eta_x)).
std::vector<double> default_slowfast_grid(double eta_x, int points = 64);

// Best per-iteration factor over the C grid. Throws CertificateError when the
// inputs are outside the certificate's domain.
SlowFastResult rate_slowfast(const SlowFastInputs& in);

// Smoothed-gap error bound constant of the scalar toy problem.
double toy_qeb_eta(double mu, double a, double tau, double sigma,
                   double beta_x, double beta_y);
// Separate primal/dual constants (eta_x, eta_y) of the same bound.
struct ToyEtaPair {
  double eta_x = 0.0;
  double eta_y = 0.0;
};
ToyEtaPair toy_qeb_eta_pair(double mu, double a, double tau, double sigma,
                            double beta_x, double beta_y);
// Metric subregularity constant of the scalar toy problem.
double toy_msr_eta(double mu, double a, double tau, double sigma);

struct RateInputs {
  double gamma = 0.0;
  double alpha_f = 0.0;
  double alpha_g = 0.0;
  std::optional<double> mu;
  std::optional<double> mu_f;
  std::optional<double> l_total;
  std::optional<double> sigma_min;
  // Smoothed-gap error bound constant and metric subregularity constant.
  std::optional<double> eta;
  std::optional<double> eta_msr;
  std::optional<double> beta_x;
  std::optional<double> beta_y;
  std::optional<double> tau;
  std::optional<double> sigma;
};

struct RateCertificate {
  double lambda = 0.0;
  double a2 = 0.0;
  // Keys: "strconv", "strconv_affine", "msr", "qebsm". Only certificates
  // whose inputs are present appear.
  std::map<std::string, double> factors;
};

RateCertificate certify(const RateInputs& in);

}  // namespace rapdhg

#endif  // RAPDHG_RATES_H_
