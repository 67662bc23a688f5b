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
#include <stdexcept>
#include <string>

namespace rapdhg {
namespace {

void CheckPartition(const std::vector<Index>& a, const std::vector<Index>& b,
                    Index size, const char* what) {
  std::vector<int> seen(size, 0);
  for (const auto* set : {&a, &b}) {
    for (Index i : *set) {
      if (i < 0 || i >= size) {
        throw std::invalid_argument(std::string("LP: ") + what +
                                    " index out of range");
      }
      if (seen[i]++) {
        throw std::invalid_argument(std::string("LP: ") + what +
                                    " index sets overlap at " +
                                    std::to_string(i));
      }
    }
  }
  for (Index i = 0; i < size; ++i) {
    if (!seen[i]) {
      throw std::invalid_argument(std::string("LP: ") + what + " index " +
                                  std::to_string(i) + " is unassigned");
    }
  }
}

Fingerprint& AddIndices(Fingerprint& fp, const std::vector<Index>& idx) {
  fp.Add(static_cast<std::int64_t>(idx.size()));
  for (Index i : idx) fp.Add(static_cast<std::int64_t>(i));
  return fp;
}

Fingerprint& AddSparse(Fingerprint& fp, const SparseMatrix& a) {
  fp.Add(static_cast<std::int64_t>(a.rows()))
      .Add(static_cast<std::int64_t>(a.cols()));
  for (Index r = 0; r < a.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(a, r); it; ++it) {
      if (it.value() == 0.0) continue;
      fp.Add(static_cast<std::int64_t>(it.row()))
          .Add(static_cast<std::int64_t>(it.col()))
          .Add(it.value());
    }
  }
  return fp;
}

}  // namespace

void LPDescription::Validate() const {
  if (b.size() != A.rows() || c.size() != A.cols()) {
    throw std::invalid_argument("LP: b and c must match the shape of A");
  }
  CheckPartition(E, I, A.rows(), "row");
  CheckPartition(N, F, A.cols(), "column");
}

void ToyProblem::Validate() const {
  if (!(mu >= 0.0)) throw std::invalid_argument("toy: mu must be >= 0");
  if (a == 0.0) throw std::invalid_argument("toy: a must be nonzero");
  if (!(tau > 0.0) || !(sigma > 0.0)) {
    throw std::invalid_argument("toy: steps must be positive");
  }
  if (!(sigma * tau * a * a < 1.0)) {
    throw std::invalid_argument("toy: sigma * tau * a^2 must be < 1");
  }
}

SaddleProblem build_toy(const ToyProblem& toy) {
  if (!(toy.mu >= 0.0)) throw std::invalid_argument("toy: mu must be >= 0");
  Eigen::MatrixXd a(1, 1);
  a(0, 0) = toy.a;
  SaddleProblem p{
      .f = squared_l2(0.0, Vec::Zero(1)),
      .f2 = toy.mu > 0.0 ? half_squared_smooth(toy.mu) : nullptr,
      .gstar = squared_l2(0.0, Vec::Constant(1, toy.b)),
      .g2star = nullptr,
      .A = LinOp::Dense(a),
      .f_folded = toy.mu > 0.0 ? squared_l2(0.5 * toy.mu, Vec::Zero(1))
                               : nullptr,
      .gstar_folded = nullptr,
      .metadata = {},
  };
  p.metadata.name = "toy";
  p.metadata.mu_f = toy.mu;
  p.metadata.mu_gstar = 0.0;
  p.metadata.sigma_min = std::abs(toy.a);
  Fingerprint fp;
  fp.Add("toy").Add(toy.mu).Add(toy.a).Add(toy.b);
  p.metadata.fingerprint = fp.value();
  p.Validate();
  return p;
}

SaddleProblem build_lp(const LPDescription& lp) {
  lp.Validate();
  SaddleProblem p{
      .f = linear_nonneg(lp.c, lp.N),
      .f2 = nullptr,
      .gstar = linear_nonneg(lp.b, lp.I),
      .g2star = nullptr,
      .A = LinOp::Sparse(lp.A),
      .f_folded = nullptr,
      .gstar_folded = nullptr,
      .metadata = {},
  };
  p.metadata.name = "lp";
  p.metadata.mu_f = 0.0;
  p.metadata.mu_gstar = 0.0;
  p.metadata.sigma_min = p.A.SigmaMin();
  Fingerprint fp;
  fp.Add("lp");
  AddSparse(fp, lp.A).Add(lp.b).Add(lp.c);
  AddIndices(fp, lp.E);
  AddIndices(fp, lp.I);
  AddIndices(fp, lp.N);
  AddIndices(fp, lp.F);
  p.metadata.fingerprint = fp.value();
  p.Validate();
  return p;
}

SaddleProblem build_ridge(const Eigen::MatrixXd& a, const Vec& b,
                          double c_reg) {
  if (!(c_reg > 0.0)) {
    throw std::invalid_argument("ridge: c_reg must be positive");
  }
  if (b.size() != a.rows()) {
    throw std::invalid_argument("ridge: b must have one entry per row of A");
  }
  SaddleProblem p{
      .f = squared_l2(c_reg, Vec::Zero(a.cols())),
      .f2 = nullptr,
      .gstar = squared_l2(0.5, b),
      .g2star = nullptr,
      .A = LinOp::Dense(a),
      .f_folded = nullptr,
      .gstar_folded = nullptr,
      .metadata = {},
  };
  p.metadata.name = "ridge";
  p.metadata.mu_f = 2.0 * c_reg;
  p.metadata.mu_gstar = 1.0;
  p.metadata.sigma_min = p.A.SigmaMin();
  Fingerprint fp;
  fp.Add("ridge")
      .Add(static_cast<std::int64_t>(a.rows()))
      .Add(static_cast<std::int64_t>(a.cols()))
      .Add(Vec(Eigen::Map<const Vec>(a.data(), a.size())))
      .Add(b)
      .Add(c_reg);
  p.metadata.fingerprint = fp.value();
  p.Validate();
  return p;
}

SaddleProblem build_svm(const SparseMatrix& x, const Vec& labels,
                        bool normalize) {
  if (labels.size() != x.rows()) {
    throw std::invalid_argument("svm: one label per sample required");
  }
  for (Index i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1.0 && labels[i] != -1.0) {
      throw std::invalid_argument("svm: labels must be +1 or -1, got " +
                                  std::to_string(labels[i]) + " in row " +
                                  std::to_string(i));
    }
  }
  SparseMatrix a = labels.asDiagonal() * x;
  if (normalize) {
    Vec col_norm = Vec::Zero(a.cols());
    for (Index r = 0; r < a.outerSize(); ++r) {
      for (SparseMatrix::InnerIterator it(a, r); it; ++it) {
        col_norm[it.col()] += it.value() * it.value();
      }
    }
    col_norm = col_norm.cwiseSqrt();
    for (Index r = 0; r < a.outerSize(); ++r) {
      for (SparseMatrix::InnerIterator it(a, r); it; ++it) {
        if (col_norm[it.col()] > 0.0) it.valueRef() /= col_norm[it.col()];
      }
    }
  }
  SaddleProblem p{
      .f = l1_norm(1.0),
      .f2 = nullptr,
      .gstar = hinge_conjugate(),
      .g2star = nullptr,
      .A = LinOp::Sparse(a),
      .f_folded = nullptr,
      .gstar_folded = nullptr,
      .metadata = {},
  };
  p.metadata.name = "svm";
  p.metadata.mu_f = 0.0;
  p.metadata.mu_gstar = 0.0;
  p.metadata.sigma_min = p.A.SigmaMin();
  Fingerprint fp;
  fp.Add("svm");
  AddSparse(fp, a);
  p.metadata.fingerprint = fp.value();
  p.Validate();
  return p;
}

SaddleProblem build_tvl1(const Field2D& image, double lam) {
  if (!(lam > 0.0)) throw std::invalid_argument("tvl1: lam must be positive");
  if (image.values.size() != image.rows * image.cols) {
    throw std::invalid_argument("tvl1: image size mismatch");
  }
  SaddleProblem p{
      .f = shifted_l1(lam, image.values),
      .f2 = nullptr,
      .gstar = group_ball_indicator(2),
      .g2star = nullptr,
      .A = LinOp::Grad2D(image.rows, image.cols),
      .f_folded = nullptr,
      .gstar_folded = nullptr,
      .metadata = {},
  };
  p.metadata.name = "tvl1";
  p.metadata.mu_f = 0.0;
  p.metadata.mu_gstar = 0.0;
  Fingerprint fp;
  fp.Add("tvl1")
      .Add(static_cast<std::int64_t>(image.rows))
      .Add(static_cast<std::int64_t>(image.cols))
      .Add(image.values)
      .Add(lam);
  p.metadata.fingerprint = fp.value();
  p.Validate();
  return p;
}

LPDescription small_lp() {
  Eigen::MatrixXd a(3, 4);
  a << 2, 4, 6, 7,  //
      1, 1, 2, 2,   //
      1, 2, 3, 3;
  LPDescription lp;
  lp.A = a.sparseView();
  lp.b = Vec(3);
  lp.b << 41, 17, 24;
  lp.c = Vec(4);
  lp.c << -7, -9, -18, -17;
  lp.I = {0, 1, 2};
  lp.N = {0, 1, 2, 3};
  return lp;
}

RidgeData synthetic_ridge(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  RidgeData d{Eigen::MatrixXd(rows, cols), Vec(rows)};
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) d.A(i, j) = normal(rng);
  }
  for (Index i = 0; i < rows; ++i) d.b[i] = normal(rng);
  return d;
}

LabeledData synthetic_svm(Index samples, Index features, std::uint64_t seed) {
  if (samples < 1 || features < 1) {
    throw std::invalid_argument("synthetic_svm: empty data set");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec w(features);
  for (Index j = 0; j < features; ++j) w[j] = normal(rng);
  Eigen::MatrixXd x(samples, features);
  Vec labels(samples);
  for (Index i = 0; i < samples; ++i) {
    double score = 0.0;
    do {
      for (Index j = 0; j < features; ++j) x(i, j) = normal(rng);
      score = x.row(i).dot(w);
    } while (std::abs(score) < 0.1);
    labels[i] = score > 0.0 ? 1.0 : -1.0;
  }
  return {x.sparseView(), labels};
}

Field2D two_level_image(Index rows, Index cols) {
  Field2D img{rows, cols, Vec::Zero(rows * cols)};
  for (Index i = rows / 4; i < rows - rows / 4; ++i) {
    for (Index j = cols / 4; j < cols - cols / 4; ++j) img(i, j) = 1.0;
  }
  const Index flips[][2] = {{0, cols - 1}, {rows - 2, 1}, {rows / 2, cols / 2}};
  for (const auto& f : flips) {
    if (f[0] >= 0 && f[0] < rows && f[1] >= 0 && f[1] < cols) {
      img(f[0], f[1]) = 1.0 - img(f[0], f[1]);
    }
  }
  return img;
}

}  // namespace rapdhg
