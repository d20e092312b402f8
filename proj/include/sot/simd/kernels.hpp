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

// Data-parallel inner loops. Each kernel has a scalar reference version and,
// on x86-64, an AVX2+FMA version picked at runtime.

#ifndef SOT_SIMD_KERNELS_HPP_
#define SOT_SIMD_KERNELS_HPP_

#include <cstddef>

#if defined(__x86_64__) || defined(_M_X64)
#define SOT_SIMD_X86 1
#else
#define SOT_SIMD_X86 0
#endif

namespace sot::simd {

enum class Isa { kScalar, kAvx2 };

const char* IsaName(Isa isa);

// True when the AVX2 kernels were compiled in and the CPU supports them.
bool Avx2Available();

// The variant used by the dispatching entry points below. SOT_SIMD=scalar in
// the environment forces the reference kernels.
Isa ActiveIsa();

// log sum_k exp(logw[k] - (t - x[k])^2 * inv_two_var); -inf when n == 0.
double LogSumExpGauss(const double* x, const double* logw, std::size_t n,
                      double t, double inv_two_var);

// sum_k (a[k] - b[k])^2 and sum_k (a[k] - b[k])^4, used for the sorted
// coupling oracle and its standard error.
struct SquaredDiffMoments {
  double sum2 = 0.0;
  double sum4 = 0.0;
};
SquaredDiffMoments SquaredDiffSums(const double* a, const double* b,
                                   std::size_t n);

namespace scalar {
double LogSumExpGauss(const double* x, const double* logw, std::size_t n,
                      double t, double inv_two_var);
SquaredDiffMoments SquaredDiffSums(const double* a, const double* b,
                                   std::size_t n);
}  // namespace scalar

#if SOT_SIMD_X86
namespace avx2 {
double LogSumExpGauss(const double* x, const double* logw, std::size_t n,
                      double t, double inv_two_var);
SquaredDiffMoments SquaredDiffSums(const double* a, const double* b,
                                   std::size_t n);
}  // namespace avx2
#endif

}  // namespace sot::simd

#endif  // SOT_SIMD_KERNELS_HPP_
