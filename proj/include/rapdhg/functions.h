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

#ifndef RAPDHG_FUNCTIONS_H_
#define RAPDHG_FUNCTIONS_H_

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rapdhg/linalg.h"

namespace rapdhg {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Absolute tolerance used by indicator membership tests.
inline constexpr double kFeasibilityTol = 1e-12;

// Multiplies two extended reals; 0 * inf is rejected with std::domain_error.
double ext_mul(double a, double b);
// Adds two extended reals; inf + (-inf) is rejected with std::domain_error.
double ext_add(double a, double b);

// A closed convex function with an exact proximal map.
class ProxFunction {
 public:
  virtual ~ProxFunction() = default;

  virtual std::string name() const = 0;
  // Value in (-inf, +inf]; +inf outside the domain.
  virtual double Eval(const Vec& v) const = 0;
  // argmin_p f(p) + ||p - v||^2 / (2t). Inputs are validated by prox().
  virtual Vec Prox(const Vec& v, double t) const = 0;
  // Strong convexity modulus; +inf for the indicator of a point.
  virtual double mu() const { return 0.0; }
  // Convex conjugate sup_p <w, p> - f(p), when available in closed form.
  virtual std::optional<double> Conjugate(const Vec& w) const = 0;
  // Fixed input dimension, if the function carries data.
  virtual std::optional<Index> dimension() const { return std::nullopt; }
};

using ProxFn = std::shared_ptr<const ProxFunction>;

// Validates t > 0 and the dimension, then calls fn.Prox.
Vec prox(const ProxFunction& fn, const Vec& v, double t);
// prox of the conjugate: v - t * prox(fn, v / t, 1 / t).
Vec prox_conjugate_via_moreau(const ProxFunction& fn, const Vec& v, double t);

// Catalog.
ProxFn l1_norm(double scale = 1.0);
// c ||.||^2 + <b, .>; b may be empty. c = 0 with empty b is the zero function.
ProxFn squared_l2(double c, Vec b = Vec());
// <c, .> plus the indicator of {p : p_i >= 0 for i in nonneg}.
ProxFn linear_nonneg(Vec c, std::vector<Index> nonneg);
ProxFn point_indicator(Vec b);
ProxFn box_indicator(Vec lower, Vec upper);
// Indicator of the product of l2 unit balls over contiguous groups; the
// conjugate of the l2,1 norm.
ProxFn group_ball_indicator(Index group_size);
// sum_i s_i + indicator of [-1, 0]^n; the conjugate of the hinge loss.
ProxFn hinge_conjugate();
// lambda ||. - center||_1.
ProxFn shifted_l1(double lambda, Vec center);

// A convex function with Lipschitz gradient.
class SmoothFunction {
 public:
  virtual ~SmoothFunction() = default;
  virtual std::string name() const = 0;
  virtual double Eval(const Vec& v) const = 0;
  virtual Vec Grad(const Vec& v) const = 0;
  virtual double lipschitz() const = 0;
};

using SmoothFn = std::shared_ptr<const SmoothFunction>;

// (c / 2) ||. - center||^2, gradient c (v - center), L = c.
SmoothFn half_squared_smooth(double c, Vec center = Vec());

}  // namespace rapdhg

#endif  // RAPDHG_FUNCTIONS_H_
