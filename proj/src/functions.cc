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

#include "rapdhg/functions.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace rapdhg {

double ext_mul(double a, double b) {
  if ((a == 0.0 && std::isinf(b)) || (b == 0.0 && std::isinf(a))) {
    throw std::domain_error("extended-real product 0 * inf is undefined");
  }
  return a * b;
}

double ext_add(double a, double b) {
  if (std::isinf(a) && std::isinf(b) && (a > 0) != (b > 0)) {
    throw std::domain_error("extended-real sum inf - inf is undefined");
  }
  return a + b;
}

Vec prox(const ProxFunction& fn, const Vec& v, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("prox: step must be positive and finite");
  }
  if (auto dim = fn.dimension(); dim && *dim != v.size()) {
    throw std::invalid_argument("prox: " + fn.name() + " expects dimension " +
                                std::to_string(*dim) + ", got " +
                                std::to_string(v.size()));
  }
  return fn.Prox(v, t);
}

Vec prox_conjugate_via_moreau(const ProxFunction& fn, const Vec& v, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("prox_conjugate_via_moreau: bad step");
  }
  return v - t * prox(fn, v / t, 1.0 / t);
}

namespace {

void CheckDim(const ProxFunction& fn, const Vec& v) {
  if (auto dim = fn.dimension(); dim && *dim != v.size()) {
    throw std::invalid_argument(fn.name() + ": dimension mismatch");
  }
}

Vec SoftThreshold(const Vec& v, double k) {
  Vec out(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    out[i] = a <= k ? 0.0 : std::copysign(a - k, v[i]);
  }
  return out;
}

class L1Norm final : public ProxFunction {
 public:
  explicit L1Norm(double s) : s_(s) {}
  std::string name() const override { return "l1_norm"; }
  double Eval(const Vec& v) const override { return s_ * v.lpNorm<1>(); }
  Vec Prox(const Vec& v, double t) const override {
    return SoftThreshold(v, t * s_);
  }
  std::optional<double> Conjugate(const Vec& w) const override {
    if (w.size() == 0) return 0.0;
    return w.lpNorm<Eigen::Infinity>() <= s_ + kFeasibilityTol ? 0.0 : kInf;
  }

 private:
  double s_;
};

class SquaredL2 final : public ProxFunction {
 public:
  SquaredL2(double c, Vec b) : c_(c), b_(std::move(b)) {}
  std::string name() const override { return "squared_l2"; }
  double Eval(const Vec& v) const override {
    CheckDim(*this, v);
    double val = c_ * v.squaredNorm();
    if (b_.size() > 0) val += b_.dot(v);
    return val;
  }
  Vec Prox(const Vec& v, double t) const override {
    if (b_.size() > 0) return (v - t * b_) / (1.0 + 2.0 * t * c_);
    return v / (1.0 + 2.0 * t * c_);
  }
  double mu() const override { return 2.0 * c_; }
  std::optional<double> Conjugate(const Vec& w) const override {
    CheckDim(*this, w);
    Vec u = b_.size() > 0 ? Vec(w - b_) : w;
    if (c_ > 0.0) return u.squaredNorm() / (4.0 * c_);
    if (u.size() == 0) return 0.0;
    return u.lpNorm<Eigen::Infinity>() <= kFeasibilityTol ? 0.0 : kInf;
  }
  std::optional<Index> dimension() const override {
    if (b_.size() > 0) return b_.size();
    return std::nullopt;
  }

 private:
  double c_;
  Vec b_;
};

class LinearNonneg final : public ProxFunction {
 public:
  LinearNonneg(Vec c, std::vector<Index> nonneg)
      : c_(std::move(c)), is_nonneg_(c_.size(), false) {
    for (Index i : nonneg) {
      if (i < 0 || i >= c_.size()) {
        throw std::invalid_argument("linear_nonneg: index out of range");
      }
      if (is_nonneg_[i]) {
        throw std::invalid_argument("linear_nonneg: duplicate index");
      }
      is_nonneg_[i] = true;
    }
  }
  std::string name() const override { return "linear_nonneg"; }
  double Eval(const Vec& v) const override {
    CheckDim(*this, v);
    for (Index i = 0; i < v.size(); ++i) {
      if (is_nonneg_[i] && v[i] < -kFeasibilityTol) return kInf;
    }
    return c_.dot(v);
  }
  Vec Prox(const Vec& v, double t) const override {
    Vec p = v - t * c_;
    for (Index i = 0; i < p.size(); ++i) {
      if (is_nonneg_[i]) p[i] = std::max(p[i], 0.0);
    }
    return p;
  }
  std::optional<double> Conjugate(const Vec& w) const override {
    CheckDim(*this, w);
    for (Index i = 0; i < w.size(); ++i) {
      const double u = w[i] - c_[i];
      if (is_nonneg_[i] ? u > kFeasibilityTol : std::abs(u) > kFeasibilityTol) {
        return kInf;
      }
    }
    return 0.0;
  }
  std::optional<Index> dimension() const override { return c_.size(); }

 private:
  Vec c_;
  std::vector<bool> is_nonneg_;
};

class PointIndicator final : public ProxFunction {
 public:
  explicit PointIndicator(Vec b) : b_(std::move(b)) {}
  std::string name() const override { return "point_indicator"; }
  double Eval(const Vec& v) const override {
    CheckDim(*this, v);
    if (v.size() == 0) return 0.0;
    return (v - b_).lpNorm<Eigen::Infinity>() <= kFeasibilityTol ? 0.0 : kInf;
  }
  Vec Prox(const Vec&, double) const override { return b_; }
  double mu() const override { return kInf; }
  std::optional<double> Conjugate(const Vec& w) const override {
    CheckDim(*this, w);
    return w.dot(b_);
  }
  std::optional<Index> dimension() const override { return b_.size(); }

 private:
  Vec b_;
};

class BoxIndicator final : public ProxFunction {
 public:
  BoxIndicator(Vec lo, Vec hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != hi_.size()) {
      throw std::invalid_argument("box_indicator: bound sizes differ");
    }
    for (Index i = 0; i < lo_.size(); ++i) {
      if (!(lo_[i] <= hi_[i])) {
        throw std::invalid_argument("box_indicator: empty box");
      }
    }
  }
  std::string name() const override { return "box_indicator"; }
  double Eval(const Vec& v) const override {
    CheckDim(*this, v);
    for (Index i = 0; i < v.size(); ++i) {
      if (v[i] < lo_[i] - kFeasibilityTol || v[i] > hi_[i] + kFeasibilityTol) {
        return kInf;
      }
    }
    return 0.0;
  }
  Vec Prox(const Vec& v, double) const override {
    return v.cwiseMax(lo_).cwiseMin(hi_);
  }
  std::optional<double> Conjugate(const Vec& w) const override {
    CheckDim(*this, w);
    double val = 0.0;
    for (Index i = 0; i < w.size(); ++i) {
      const double bound = w[i] > 0.0 ? hi_[i] : lo_[i];
      if (w[i] == 0.0) continue;
      if (std::isinf(bound) && std::abs(w[i]) <= kFeasibilityTol) continue;
      val = ext_add(val, ext_mul(w[i], bound));
    }
    return val;
  }
  std::optional<Index> dimension() const override { return lo_.size(); }

 private:
  Vec lo_;
  Vec hi_;
};

class GroupBallIndicator final : public ProxFunction {
 public:
  explicit GroupBallIndicator(Index g) : g_(g) {
    if (g < 1) throw std::invalid_argument("group_ball_indicator: group < 1");
  }
  std::string name() const override { return "group_ball_indicator"; }
  double Eval(const Vec& v) const override {
    CheckGroups(v);
    for (Index k = 0; k < v.size(); k += g_) {
      if (v.segment(k, g_).norm() > 1.0 + kFeasibilityTol) return kInf;
    }
    return 0.0;
  }
  Vec Prox(const Vec& v, double) const override {
    CheckGroups(v);
    Vec p = v;
    for (Index k = 0; k < v.size(); k += g_) {
      const double n = v.segment(k, g_).norm();
      if (n > 1.0) p.segment(k, g_) /= n;
    }
    return p;
  }
  std::optional<double> Conjugate(const Vec& w) const override {
    CheckGroups(w);
    double val = 0.0;
    for (Index k = 0; k < w.size(); k += g_) val += w.segment(k, g_).norm();
    return val;
  }

 private:
  void CheckGroups(const Vec& v) const {
    if (v.size() % g_ != 0) {
      throw std::invalid_argument(
          "group_ball_indicator: size not a multiple of the group size");
    }
  }
  Index g_;
};

class HingeConjugate final : public ProxFunction {
 public:
  std::string name() const override { return "hinge_conjugate"; }
  double Eval(const Vec& v) const override {
    for (Index i = 0; i < v.size(); ++i) {
      if (v[i] < -1.0 - kFeasibilityTol || v[i] > kFeasibilityTol) return kInf;
    }
    return v.sum();
  }
  Vec Prox(const Vec& v, double t) const override {
    return (v.array() - t).cwiseMax(-1.0).cwiseMin(0.0).matrix();
  }
  std::optional<double> Conjugate(const Vec& w) const override {
    return (1.0 - w.array()).cwiseMax(0.0).sum();
  }
};

class ShiftedL1 final : public ProxFunction {
 public:
  ShiftedL1(double lambda, Vec center)
      : lambda_(lambda), center_(std::move(center)) {}
  std::string name() const override { return "shifted_l1"; }
  double Eval(const Vec& v) const override {
    CheckDim(*this, v);
    return lambda_ * (v - center_).lpNorm<1>();
  }
  Vec Prox(const Vec& v, double t) const override {
    return center_ + SoftThreshold(v - center_, t * lambda_);
  }
  std::optional<double> Conjugate(const Vec& w) const override {
    CheckDim(*this, w);
    if (w.size() > 0 &&
        w.lpNorm<Eigen::Infinity>() > lambda_ + kFeasibilityTol) {
      return kInf;
    }
    return w.dot(center_);
  }
  std::optional<Index> dimension() const override { return center_.size(); }

 private:
  double lambda_;
  Vec center_;
};

class HalfSquaredSmooth final : public SmoothFunction {
 public:
  HalfSquaredSmooth(double c, Vec center) : c_(c), center_(std::move(center)) {}
  std::string name() const override { return "half_squared_smooth"; }
  double Eval(const Vec& v) const override {
    if (center_.size() > 0) return 0.5 * c_ * (v - center_).squaredNorm();
    return 0.5 * c_ * v.squaredNorm();
  }
  Vec Grad(const Vec& v) const override {
    if (center_.size() > 0) return c_ * (v - center_);
    return c_ * v;
  }
  double lipschitz() const override { return c_; }

 private:
  double c_;
  Vec center_;
};

}  // namespace

ProxFn l1_norm(double scale) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("l1_norm: scale must be >= 0");
  }
  return std::make_shared<L1Norm>(scale);
}

ProxFn squared_l2(double c, Vec b) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("squared_l2: c must be >= 0");
  }
  return std::make_shared<SquaredL2>(c, std::move(b));
}

ProxFn linear_nonneg(Vec c, std::vector<Index> nonneg) {
  return std::make_shared<LinearNonneg>(std::move(c), std::move(nonneg));
}

ProxFn point_indicator(Vec b) {
  return std::make_shared<PointIndicator>(std::move(b));
}

ProxFn box_indicator(Vec lower, Vec upper) {
  return std::make_shared<BoxIndicator>(std::move(lower), std::move(upper));
}

ProxFn group_ball_indicator(Index group_size) {
  return std::make_shared<GroupBallIndicator>(group_size);
}

ProxFn hinge_conjugate() { return std::make_shared<HingeConjugate>(); }

ProxFn shifted_l1(double lambda, Vec center) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("shifted_l1: lambda must be >= 0");
  }
  return std::make_shared<ShiftedL1>(lambda, std::move(center));
}

SmoothFn half_squared_smooth(double c, Vec center) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("half_squared_smooth: c must be >= 0");
  }
  return std::make_shared<HalfSquaredSmooth>(c, std::move(center));
}

}  // namespace rapdhg
