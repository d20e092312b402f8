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

#include "sot/simd/kernels.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

namespace sot::simd {
namespace {

double Rel(double a, double b) {
  if (a == b) return 0.0;
  return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b));
}

TEST(Simd, ActiveIsaIsReported) {
  const Isa isa = ActiveIsa();
  EXPECT_STRNE(IsaName(isa), "");
  if (!Avx2Available()) EXPECT_EQ(isa, Isa::kScalar);
}

TEST(Simd, LogSumExpScalarMatchesDirect) {
  const std::vector<double> x = {-1.0, 0.5, 2.0};
  const std::vector<double> lw = {std::log(0.2), std::log(0.5), std::log(0.3)};
  const double t = 0.3;
  const double ivar = 0.5;
  double direct = 0.0;
  for (int k = 0; k < 3; ++k) direct += std::exp(lw[k] - (t - x[k]) * (t - x[k]) * ivar);
  EXPECT_NEAR(scalar::LogSumExpGauss(x.data(), lw.data(), 3, t, ivar), std::log(direct), 1e-15);
  EXPECT_EQ(scalar::LogSumExpGauss(x.data(), lw.data(), 0, t, ivar), -INFINITY);
}

#if SOT_SIMD_X86
TEST(Simd, Avx2MatchesScalar) {
  if (!Avx2Available()) GTEST_SKIP() << "no AVX2 on this host";
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 4.0);
  std::uniform_real_distribution<double> w(-30.0, 0.0);
  for (std::size_t n : {1u, 3u, 4u, 5u, 8u, 17u, 64u, 1001u}) {
    std::vector<double> x(n), lw(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = g(rng);
      lw[i] = w(rng);
    }
    for (double t : {-50.0, -3.0, 0.0, 0.25, 9.0, 200.0}) {
      for (double ivar : {0.5, 2.0, 0.01}) {
        const double s = scalar::LogSumExpGauss(x.data(), lw.data(), n, t, ivar);
        const double v = avx2::LogSumExpGauss(x.data(), lw.data(), n, t, ivar);
        EXPECT_LE(Rel(s, v), 1e-14) << n << " " << t << " " << ivar;
      }
    }
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = g(rng);
      b[i] = g(rng);
    }
    const SquaredDiffMoments ms = scalar::SquaredDiffSums(a.data(), b.data(), n);
    const SquaredDiffMoments mv = avx2::SquaredDiffSums(a.data(), b.data(), n);
    EXPECT_LE(Rel(ms.sum2, mv.sum2), 1e-14) << n;
    EXPECT_LE(Rel(ms.sum4, mv.sum4), 1e-14) << n;
  }
}
#endif

TEST(Simd, DispatchMatchesScalar) {
  std::vector<double> x(37), lw(37);
  for (int i = 0; i < 37; ++i) {
    x[i] = 0.3 * i - 5.0;
    lw[i] = -0.1 * i;
  }
  const double s = scalar::LogSumExpGauss(x.data(), lw.data(), x.size(), 1.7, 0.5);
  EXPECT_LE(Rel(s, LogSumExpGauss(x.data(), lw.data(), x.size(), 1.7, 0.5)), 1e-14);
}

}  // namespace
}  // namespace sot::simd
