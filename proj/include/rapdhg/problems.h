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

#ifndef RAPDHG_PROBLEMS_H_
#define RAPDHG_PROBLEMS_H_

#include <cstdint>
#include <vector>

#include "rapdhg/linalg.h"
#include "rapdhg/problem.h"

namespace rapdhg {

// min <c, x> s.t. A_E x = b_E, A_I x <= b_I, x_N >= 0, x_F free.
struct LPDescription {
  SparseMatrix A;
  Vec b;
  Vec c;
  std::vector<Index> E;
  std::vector<Index> I;
  std::vector<Index> N;
  std::vector<Index> F;

  // Throws std::invalid_argument unless E/I partition the rows and N/F the
  // columns, and the vector sizes match A.
  void Validate() const;
};

// min (mu / 2) x^2 s.t. a x = b, with scalar steps.
struct ToyProblem {
  double mu = 0.0;
  double a = 0.03;
  double b = 0.0;
  double tau = 1.0;
  double sigma = 1.0;

  void Validate() const;
};

SaddleProblem build_toy(const ToyProblem& toy);
SaddleProblem build_lp(const LPDescription& lp);
// min 0.5 ||Ax - b||^2 + c_reg ||x||^2.
SaddleProblem build_ridge(const Eigen::MatrixXd& a, const Vec& b,
                          double c_reg);
// min sum_i max(0, 1 - y_i <x_i, w>) + ||w||_1.
SaddleProblem build_svm(const SparseMatrix& x, const Vec& labels,
                        bool normalize);
// min lam ||x - image||_1 + ||D x||_{2,1}.
SaddleProblem build_tvl1(const Field2D& image, double lam);

// The four-variable, three-constraint inequality LP used in the examples.
LPDescription small_lp();

struct RidgeData {
  Eigen::MatrixXd A;
  Vec b;
};
RidgeData synthetic_ridge(Index rows, Index cols, std::uint64_t seed);

struct LabeledData {
  SparseMatrix X;
  Vec labels;
};
// Linearly separable samples with labels sign(<x_i, w_true>).
LabeledData synthetic_svm(Index samples, Index features, std::uint64_t seed);

// A bright square on a dark background with a few flipped pixels.
Field2D two_level_image(Index rows, Index cols);

}  // namespace rapdhg

#endif  // RAPDHG_PROBLEMS_H_
