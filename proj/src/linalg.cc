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
#include <stdexcept>
#include <string>
#include <utility>

#include "Eigen/SVD"

namespace rapdhg {

PrimalDualPoint operator+(PrimalDualPoint a, const PrimalDualPoint& b) {
  a += b;
  return a;
}

PrimalDualPoint operator-(PrimalDualPoint a, const PrimalDualPoint& b) {
  a -= b;
  return a;
}

PrimalDualPoint operator*(double s, PrimalDualPoint a) {
  a *= s;
  return a;
}

VNormParams::VNormParams(double tau, double sigma) : tau_(tau), sigma_(sigma) {
  if (!(tau > 0.0) || !(sigma > 0.0) || !std::isfinite(tau) ||
      !std::isfinite(sigma)) {
    throw std::invalid_argument("VNormParams: tau and sigma must be positive");
  }
}

double v_norm_squared(const PrimalDualPoint& z, const VNormParams& p) {
  return z.x.squaredNorm() / p.tau() + z.y.squaredNorm() / p.sigma();
}

double v_norm(const PrimalDualPoint& z, const VNormParams& p) {
  return std::sqrt(v_norm_squared(z, p));
}

double v_dist(const PrimalDualPoint& a, const PrimalDualPoint& b,
              const VNormParams& p) {
  if (a.x.size() != b.x.size() || a.y.size() != b.y.size()) {
    throw std::invalid_argument("v_dist: dimension mismatch");
  }
  return std::sqrt((a.x - b.x).squaredNorm() / p.tau() +
                   (a.y - b.y).squaredNorm() / p.sigma());
}

namespace {

class DenseOperator final : public LinearOperator {
 public:
  explicit DenseOperator(Eigen::MatrixXd a) : a_(std::move(a)) {}
  Index rows() const override { return a_.rows(); }
  Index cols() const override { return a_.cols(); }
  void Apply(const Vec& x, Vec& out) const override { out.noalias() = a_ * x; }
  void ApplyAdjoint(const Vec& y, Vec& out) const override {
    out.noalias() = a_.transpose() * y;
  }
  std::optional<Eigen::MatrixXd> ToDense() const override { return a_; }

 private:
  Eigen::MatrixXd a_;
};

class SparseOperator final : public LinearOperator {
 public:
  explicit SparseOperator(SparseMatrix a) : a_(std::move(a)) {
    a_.makeCompressed();
  }
  Index rows() const override { return a_.rows(); }
  Index cols() const override { return a_.cols(); }
  void Apply(const Vec& x, Vec& out) const override { out.noalias() = a_ * x; }
  void ApplyAdjoint(const Vec& y, Vec& out) const override {
    out.noalias() = a_.transpose() * y;
  }
  std::optional<Eigen::MatrixXd> ToDense() const override {
    return Eigen::MatrixXd(a_);
  }

 private:
  SparseMatrix a_;
};

class Grad2DOperator final : public LinearOperator {
 public:
  Grad2DOperator(Index r, Index c) : r_(r), c_(c) {}
  Index rows() const override { return 2 * r_ * c_; }
  Index cols() const override { return r_ * c_; }
  void Apply(const Vec& x, Vec& out) const override {
    out = grad2d(x, r_, c_);
  }
  void ApplyAdjoint(const Vec& y, Vec& out) const override {
    out = grad2d_adjoint(y, r_, c_);
  }
  std::optional<Eigen::MatrixXd> ToDense() const override {
    Eigen::MatrixXd d(rows(), cols());
    Vec e = Vec::Zero(cols());
    for (Index j = 0; j < cols(); ++j) {
      e[j] = 1.0;
      d.col(j) = grad2d(e, r_, c_);
      e[j] = 0.0;
    }
    return d;
  }

 private:
  Index r_;
  Index c_;
};

void CheckApplySize(const LinearOperator& op, const Vec& x) {
  if (x.size() != op.cols()) {
    throw std::invalid_argument("LinOp::Apply: expected vector of size " +
                                std::to_string(op.cols()) + ", got " +
                                std::to_string(x.size()));
  }
}

void CheckAdjointSize(const LinearOperator& op, const Vec& y) {
  if (y.size() != op.rows()) {
    throw std::invalid_argument("LinOp::Adjoint: expected vector of size " +
                                std::to_string(op.rows()) + ", got " +
                                std::to_string(y.size()));
  }
}

}  // namespace

LinOp::LinOp(std::shared_ptr<const LinearOperator> op) : op_(std::move(op)) {
  if (op_ == nullptr) throw std::invalid_argument("LinOp: null operator");
  if (op_->rows() == 0 || op_->cols() == 0) {
    norm_ = {0.0, true, 0};
  } else {
    norm_ = estimate_op_norm(*op_);
  }
  norm_bound_ = kNormInflation * norm_.value;
}

LinOp LinOp::Dense(Eigen::MatrixXd a) {
  return LinOp(std::make_shared<DenseOperator>(std::move(a)));
}

LinOp LinOp::Sparse(SparseMatrix a) {
  return LinOp(std::make_shared<SparseOperator>(std::move(a)));
}

LinOp LinOp::Grad2D(Index image_rows, Index image_cols) {
  if (image_rows < 1 || image_cols < 1) {
    throw std::invalid_argument("Grad2D: image must be at least 1x1");
  }
  return LinOp(std::make_shared<Grad2DOperator>(image_rows, image_cols));
}

LinOp LinOp::FromOperator(std::shared_ptr<const LinearOperator> op) {
  return LinOp(std::move(op));
}

Vec LinOp::Apply(const Vec& x) const {
  Vec out;
  Apply(x, out);
  return out;
}

Vec LinOp::Adjoint(const Vec& y) const {
  Vec out;
  Adjoint(y, out);
  return out;
}

void LinOp::Apply(const Vec& x, Vec& out) const {
  CheckApplySize(*op_, x);
  op_->Apply(x, out);
}

void LinOp::Adjoint(const Vec& y, Vec& out) const {
  CheckAdjointSize(*op_, y);
  op_->ApplyAdjoint(y, out);
}

std::optional<double> LinOp::SigmaMin() const {
  if (static_cast<double>(rows()) * static_cast<double>(cols()) >
      kSvdEntryLimit) {
    return std::nullopt;
  }
  std::optional<Eigen::MatrixXd> dense = op_->ToDense();
  if (!dense) return std::nullopt;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(*dense);
  const Vec& s = svd.singularValues();
  if (s.size() == 0) return std::nullopt;
  return s[s.size() - 1];
}

NormEstimate estimate_op_norm(const LinearOperator& a, double tol,
                              int max_iters) {
  if (max_iters < 1) {
    throw std::invalid_argument("estimate_op_norm: max_iters must be >= 1");
  }
  std::mt19937_64 rng(0x5eed2026u);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(a.cols());
  for (Index i = 0; i < v.size(); ++i) v[i] = normal(rng);
  v.normalize();

  Vec av, atav;
  double rayleigh = 0.0;
  NormEstimate result;
  for (int it = 1; it <= max_iters; ++it) {
    a.Apply(v, av);
    a.ApplyAdjoint(av, atav);
    const double next = av.squaredNorm();
    result.iterations = it;
    const double atav_norm = atav.norm();
    if (atav_norm == 0.0) {
      rayleigh = next;
      result.converged = true;
      break;
    }
    const bool done =
        it > 1 && std::abs(next - rayleigh) <= tol * std::max(next, 1e-300);
    rayleigh = next;
    v = atav / atav_norm;
    if (done) {
      result.converged = true;
      break;
    }
  }
  result.value = std::sqrt(rayleigh);
  return result;
}

NormEstimate estimate_op_norm(const LinOp& a, double tol, int max_iters) {
  return estimate_op_norm(a.op(), tol, max_iters);
}

Vec grad2d(const Vec& u, Index rows, Index cols) {
  if (u.size() != rows * cols) {
    throw std::invalid_argument("grad2d: image size mismatch");
  }
  Vec out = Vec::Zero(2 * rows * cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const Index p = i * cols + j;
      if (j + 1 < cols) out[2 * p] = u[p + 1] - u[p];
      if (i + 1 < rows) out[2 * p + 1] = u[p + cols] - u[p];
    }
  }
  return out;
}

Vec grad2d_adjoint(const Vec& q, Index rows, Index cols) {
  if (q.size() != 2 * rows * cols) {
    throw std::invalid_argument("grad2d_adjoint: field size mismatch");
  }
  Vec out = Vec::Zero(rows * cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const Index p = i * cols + j;
      if (j + 1 < cols) {
        out[p] -= q[2 * p];
        out[p + 1] += q[2 * p];
      }
      if (i + 1 < rows) {
        out[p] -= q[2 * p + 1];
        out[p + cols] += q[2 * p + 1];
      }
    }
  }
  return out;
}

}  // namespace rapdhg
