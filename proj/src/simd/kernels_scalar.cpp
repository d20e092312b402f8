// Copyright 2026 The smoothot Authors.
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

#include <cmath>
#include <limits>

#include "sot/simd/kernels.hpp"

namespace sot::simd::scalar {

double LogSumExpGauss(const double* x, const double* logw, std::size_t n,
                      double t, double inv_two_var) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const double d = t - x[k];
    const double v = logw[k] - d * d * inv_two_var;
    if (v > m) m = v;
  }
  if (!(m > -std::numeric_limits<double>::infinity())) return m;
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = t - x[k];
    s += std::exp(logw[k] - d * d * inv_two_var - m);
  }
  return m + std::log(s);
}

SquaredDiffMoments SquaredDiffSums(const double* a, const double* b,
                                   std::size_t n) {
  SquaredDiffMoments out;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = a[k] - b[k];
    const double d2 = d * d;
    out.sum2 += d2;
    out.sum4 += d2 * d2;
  }
  return out;
}

}  // namespace sot::simd::scalar
