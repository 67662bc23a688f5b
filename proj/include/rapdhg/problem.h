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

#ifndef RAPDHG_PROBLEM_H_
#define RAPDHG_PROBLEM_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "rapdhg/functions.h"
#include "rapdhg/linalg.h"

namespace rapdhg {

struct ProblemMetadata {
  std::string name;
  std::optional<double> mu_f;
  std::optional<double> mu_gstar;
  std::optional<double> sigma_min;
  // Content hash of the data the problem was built from.
  std::uint64_t fingerprint = 0;
};

// min_x max_y f(x) + f2(x) + <Ax, y> - g*(y) - g2*(y).
struct SaddleProblem {
  ProxFn f;
  SmoothFn f2;  // may be null
  ProxFn gstar;
  SmoothFn g2star;  // may be null
  LinOp A;
  // Prox-capable f + f2 and g* + g2*, used by the gap evaluators when the
  // smooth blocks are present. Null when not available.
  ProxFn f_folded;
  ProxFn gstar_folded;
  ProblemMetadata metadata;

  Index n() const { return A.cols(); }
  Index m() const { return A.rows(); }
  double lipschitz_f() const { return f2 ? f2->lipschitz() : 0.0; }
  double lipschitz_gstar() const { return g2star ? g2star->lipschitz() : 0.0; }

  // Throws std::invalid_argument on missing blocks or dimension mismatch.
  void Validate() const;

  // f + f2 and g* + g2* as extended-real values.
  double PrimalValue(const Vec& x) const;
  double DualValue(const Vec& y) const;

  // L(x, y) = f(x) + f2(x) + <Ax, y> - g*(y) - g2*(y). Throws
  // std::domain_error when both x and y are infeasible (inf - inf).
  double Lagrangian(const Vec& x, const Vec& y) const;
};

// FNV-1a accumulator used for problem fingerprints.
class Fingerprint {
 public:
  Fingerprint& Add(std::string_view s);
  Fingerprint& Add(double v);
  Fingerprint& Add(std::int64_t v);
  Fingerprint& Add(const Vec& v);
  std::uint64_t value() const { return h_; }

 private:
  void Bytes(const void* data, std::size_t n);
  std::uint64_t h_ = 1469598103934665603ull;
};

}  // namespace rapdhg

#endif  // RAPDHG_PROBLEM_H_
