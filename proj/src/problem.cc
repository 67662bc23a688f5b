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

#include "rapdhg/problem.h"

#include <cmath>
#include <stdexcept>

namespace rapdhg {

void SaddleProblem::Validate() const {
  if (!f || !gstar) {
    throw std::invalid_argument("SaddleProblem: f and g* are required");
  }
  if (auto d = f->dimension(); d && *d != n()) {
    throw std::invalid_argument("SaddleProblem: f dimension != columns of A");
  }
  if (auto d = gstar->dimension(); d && *d != m()) {
    throw std::invalid_argument("SaddleProblem: g* dimension != rows of A");
  }
  if (f_folded) {
    if (auto d = f_folded->dimension(); d && *d != n()) {
      throw std::invalid_argument("SaddleProblem: folded f dimension");
    }
  }
  if (gstar_folded) {
    if (auto d = gstar_folded->dimension(); d && *d != m()) {
      throw std::invalid_argument("SaddleProblem: folded g* dimension");
    }
  }
}

double SaddleProblem::PrimalValue(const Vec& x) const {
  double v = f->Eval(x);
  if (f2 && std::isfinite(v)) v += f2->Eval(x);
  return v;
}

double SaddleProblem::DualValue(const Vec& y) const {
  double v = gstar->Eval(y);
  if (g2star && std::isfinite(v)) v += g2star->Eval(y);
  return v;
}

double SaddleProblem::Lagrangian(const Vec& x, const Vec& y) const {
  const double fx = PrimalValue(x);
  const double gy = DualValue(y);
  if (!std::isfinite(fx) || !std::isfinite(gy)) return ext_add(fx, -gy);
  return fx + A.Apply(x).dot(y) - gy;
}

void Fingerprint::Bytes(const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h_ ^= p[i];
    h_ *= 1099511628211ull;
  }
}

Fingerprint& Fingerprint::Add(std::string_view s) {
  Add(static_cast<std::int64_t>(s.size()));
  Bytes(s.data(), s.size());
  return *this;
}

Fingerprint& Fingerprint::Add(double v) {
  Bytes(&v, sizeof(v));
  return *this;
}

Fingerprint& Fingerprint::Add(std::int64_t v) {
  Bytes(&v, sizeof(v));
  return *this;
}

Fingerprint& Fingerprint::Add(const Vec& v) {
  Add(static_cast<std::int64_t>(v.size()));
  Bytes(v.data(), sizeof(double) * static_cast<std::size_t>(v.size()));
  return *this;
}

}  // namespace rapdhg
