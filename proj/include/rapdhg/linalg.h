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

#ifndef RAPDHG_LINALG_H_
#define RAPDHG_LINALG_H_

#include <cstdint>
#include <memory>
#include <optional>

#include "Eigen/Core"
#include "Eigen/SparseCore"

namespace rapdhg {

using Vec = Eigen::VectorXd;
using Index = Eigen::Index;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// A primal-dual pair z = (x, y).
struct PrimalDualPoint {
  Vec x;
  Vec y;

  static PrimalDualPoint Zero(Index n, Index m) {
    return {Vec::Zero(n), Vec::Zero(m)};
  }
  PrimalDualPoint& operator+=(const PrimalDualPoint& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  PrimalDualPoint& operator-=(const PrimalDualPoint& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  PrimalDualPoint& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
  bool operator==(const PrimalDualPoint& o) const {
    return x.size() == o.x.size() && y.size() == o.y.size() && x == o.x &&
           y == o.y;
  }
};

PrimalDualPoint operator+(PrimalDualPoint a, const PrimalDualPoint& b);
PrimalDualPoint operator-(PrimalDualPoint a, const PrimalDualPoint& b);
PrimalDualPoint operator*(double s, PrimalDualPoint a);

// Weights of the step-size norm ||z||_V^2 = ||x||^2 / tau + ||y||^2 / sigma.
class VNormParams {
 public:
  // Throws std::invalid_argument unless tau > 0 and sigma > 0.
  VNormParams(double tau, double sigma);

  double tau() const { return tau_; }
  double sigma() const { return sigma_; }

 private:
  double tau_;
  double sigma_;
};

double v_norm(const PrimalDualPoint& z, const VNormParams& p);
double v_norm_squared(const PrimalDualPoint& z, const VNormParams& p);
double v_dist(const PrimalDualPoint& a, const PrimalDualPoint& b,
              const VNormParams& p);

// Concrete operator representation behind LinOp.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual Index rows() const = 0;
  virtual Index cols() const = 0;
  virtual void Apply(const Vec& x, Vec& out) const = 0;
  virtual void ApplyAdjoint(const Vec& y, Vec& out) const = 0;
  virtual std::optional<Eigen::MatrixXd> ToDense() const = 0;
};

struct NormEstimate {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Immutable handle on a linear operator A : R^n -> R^m with a cached
// upper estimate of its spectral norm.
class LinOp {
 public:
  static constexpr double kNormInflation = 1.01;

  static LinOp Dense(Eigen::MatrixXd a);
  static LinOp Sparse(SparseMatrix a);
  // Forward-difference gradient of a rows x cols image, Neumann boundary.
  static LinOp Grad2D(Index image_rows, Index image_cols);
  static LinOp FromOperator(std::shared_ptr<const LinearOperator> op);

  Index rows() const { return op_->rows(); }
  Index cols() const { return op_->cols(); }
  Vec Apply(const Vec& x) const;
  Vec Adjoint(const Vec& y) const;
  void Apply(const Vec& x, Vec& out) const;
  void Adjoint(const Vec& y, Vec& out) const;

  // Power-iteration estimate of ||A|| and the inflated bound used for steps.
  const NormEstimate& norm_estimate() const { return norm_; }
  double norm_bound() const { return norm_bound_; }

  std::optional<Eigen::MatrixXd> ToDense() const { return op_->ToDense(); }
  // Smallest singular value by dense SVD; nullopt beyond kSvdEntryLimit.
  std::optional<double> SigmaMin() const;
  const LinearOperator& op() const { return *op_; }

  static constexpr double kSvdEntryLimit = 1e6;

 private:
  explicit LinOp(std::shared_ptr<const LinearOperator> op);

  std::shared_ptr<const LinearOperator> op_;
  NormEstimate norm_;
  double norm_bound_ = 0.0;
};

// Power iteration on A^T A from a fixed seeded start. Stops when the relative
// change of the Rayleigh quotient falls below tol.
NormEstimate estimate_op_norm(const LinearOperator& a, double tol = 1e-6,
                              int max_iters = 1000);
NormEstimate estimate_op_norm(const LinOp& a, double tol = 1e-6,
                              int max_iters = 1000);

// Row-major 2D scalar field.
struct Field2D {
  Index rows = 0;
  Index cols = 0;
  Vec values;

  double operator()(Index i, Index j) const { return values[i * cols + j]; }
  double& operator()(Index i, Index j) { return values[i * cols + j]; }
};

// Gradient with interleaved channels: out[2p] is the horizontal difference
// u(i, j+1) - u(i, j) at pixel p = i * cols + j, out[2p + 1] the vertical one.
Vec grad2d(const Vec& u, Index rows, Index cols);
Vec grad2d_adjoint(const Vec& p, Index rows, Index cols);

}  // namespace rapdhg

#endif  // RAPDHG_LINALG_H_
