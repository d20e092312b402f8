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

// Built with -mavx2 -mfma; only reached after a cpuid check.

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "sot/simd/kernels.hpp"

namespace sot::simd::avx2 {
namespace {

constexpr double kLog2e = 1.4426950408889634074;
constexpr double kLn2Hi = 6.93145751953125e-1;
constexpr double kLn2Lo = 1.42860682030941723212e-6;

inline double HorizontalMax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  hi = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, hi));
}

inline double HorizontalSum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  hi = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, hi));
}

// exp(x) for x <= 0; returns 0 below -708.
inline __m256d ExpNonPositive(__m256d x) {
  const __m256d floor_mask = _mm256_cmp_pd(x, _mm256_set1_pd(-708.0), _CMP_GE_OQ);
  x = _mm256_max_pd(x, _mm256_set1_pd(-708.0));
  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kLog2e)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kLn2Hi), x);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kLn2Lo), r);
  // Taylor series to degree 13; |r| <= ln2/2 keeps the remainder below 2e-17.
  __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
  // 2^n through the exponent field; n is integral and within [-1022, 0].
  const __m256d magic = _mm256_set1_pd(6755399441055744.0);
  const __m256i ni = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(n, magic)),
                                      _mm256_castpd_si256(magic));
  const __m256i bits =
      _mm256_slli_epi64(_mm256_add_epi64(ni, _mm256_set1_epi64x(1023)), 52);
  const __m256d scaled = _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
  return _mm256_and_pd(scaled, floor_mask);
}

}  // namespace

double LogSumExpGauss(const double* x, const double* logw, std::size_t n,
                      double t, double inv_two_var) {
  const double neg_inf = -std::numeric_limits<double>::infinity();
  const __m256d vt = _mm256_set1_pd(t);
  const __m256d vc = _mm256_set1_pd(inv_two_var);
  std::size_t k = 0;
  __m256d vmax = _mm256_set1_pd(neg_inf);
  for (; k + 4 <= n; k += 4) {
    const __m256d d = _mm256_sub_pd(vt, _mm256_loadu_pd(x + k));
    const __m256d v = _mm256_fnmadd_pd(_mm256_mul_pd(d, d), vc, _mm256_loadu_pd(logw + k));
    vmax = _mm256_max_pd(vmax, v);
  }
  double m = HorizontalMax(vmax);
  for (std::size_t j = k; j < n; ++j) {
    const double d = t - x[j];
    const double v = logw[j] - d * d * inv_two_var;
    if (v > m) m = v;
  }
  if (!(m > neg_inf)) return m;
  const __m256d vm = _mm256_set1_pd(m);
  __m256d vsum = _mm256_setzero_pd();
  for (k = 0; k + 4 <= n; k += 4) {
    const __m256d d = _mm256_sub_pd(vt, _mm256_loadu_pd(x + k));
    const __m256d v = _mm256_fnmadd_pd(_mm256_mul_pd(d, d), vc, _mm256_loadu_pd(logw + k));
    vsum = _mm256_add_pd(vsum, ExpNonPositive(_mm256_sub_pd(v, vm)));
  }
  double s = HorizontalSum(vsum);
  for (std::size_t j = k; j < n; ++j) {
    const double d = t - x[j];
    s += std::exp(logw[j] - d * d * inv_two_var - m);
  }
  return m + std::log(s);
}

SquaredDiffMoments SquaredDiffSums(const double* a, const double* b,
                                   std::size_t n) {
  __m256d s2 = _mm256_setzero_pd();
  __m256d s4 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    const __m256d d2 = _mm256_mul_pd(d, d);
    s2 = _mm256_add_pd(s2, d2);
    s4 = _mm256_fmadd_pd(d2, d2, s4);
  }
  SquaredDiffMoments out{HorizontalSum(s2), HorizontalSum(s4)};
  for (; k < n; ++k) {
    const double d = a[k] - b[k];
    out.sum2 += d * d;
    out.sum4 += d * d * d * d;
  }
  return out;
}

}  // namespace sot::simd::avx2
