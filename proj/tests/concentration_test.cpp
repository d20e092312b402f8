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

#include "sot/concentration.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "sot/common.hpp"
#include "sot/constructions.hpp"
#include "sot/gaussian.hpp"
#include "sot/sampling.hpp"

namespace sot {
namespace {

const SmoothedMixture& StdNormal() {
  static const SmoothedMixture m(AtomicDistribution::Dirac(0.0), 1.0);
  return m;
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

TEST(WeightedStatistic, SinglePoint) {
  const EmpiricalMeasure s = Sample(StdNormal(), 1, 3);
  const double v = WeightedCdfStatistic(StdNormal(), s);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_GE(v, 0.0);
  // With n = 1 the weight is at least 1, so the statistic is a plain gap.
  EXPECT_LE(v, 1.0);
  EXPECT_THROW(WeightedCdfStatistic(StdNormal(), EmpiricalMeasure{}), InvalidArgument);
}

TEST(WeightedStatistic, IntegralTransformInvariance) {
  const EmpiricalMeasure s = Sample(StdNormal(), 500, 17);
  std::vector<double> u;
  for (double x : s.samples()) u.push_back(NormCdf(x));
  const double direct = WeightedCdfStatistic(StdNormal(), s);
  const double uniform =
      WeightedCdfStatistic([](double t) { return std::clamp(t, 0.0, 1.0); },
                           [](double p) { return p; }, u);
  EXPECT_NEAR(direct, uniform, 1e-9);
}

TEST(WeightedStatistic, BoundArithmetic) {
  EXPECT_NEAR(WeightedCdfBound(1024, 0.1), 0.5 * std::log(20480.0), 1e-14);
  EXPECT_NEAR(PlainCdfBound(1024, 0.1), 0.25 * std::log(10240.0), 1e-14);
}

TEST(WeightedStatistic, SmoothedEmpiricalIsExact) {
  // Smoothing the law itself gives F_n = F.
  const AtomicDistribution p = AtomicDistribution::FromWeights({0, 2}, {1, 1});
  const SmoothedMixture f(p, 1.0);
  EXPECT_NEAR(WeightedCdfStatisticSmoothed(f, f, 64), 0.0, 1e-15);
  const SmoothedMixture g(AtomicDistribution::FromWeights({0, 2}, {3, 1}), 1.0);
  EXPECT_GT(WeightedCdfStatisticSmoothed(f, g, 64), 0.0);
}

TEST(RunConcentration, BoundHoldsWithStatedProbability) {
  const ConcentrationBatch b = RunConcentration(StdNormal(), 1024, 0.1, 500, 42);
  ASSERT_EQ(b.replications.size(), 500u);
  EXPECT_LE(b.violation_rate, 0.1);
  for (const ConcentrationReport& r : b.replications) EXPECT_GE(r.statistic, 0.0);
  EXPECT_THROW(RunConcentration(StdNormal(), 16, 0.1, 0, 1), InvalidArgument);
  EXPECT_THROW(RunConcentration(StdNormal(), 16, 1.0, 5, 1), InvalidArgument);
}

TEST(RunConcentration, MedianShrinksWithN) {
  auto median = [](std::size_t n) {
    std::vector<double> v;
    for (const ConcentrationReport& r : RunConcentration(StdNormal(), n, 0.1, 200, 7).replications) {
      v.push_back(r.statistic);
    }
    return Median(v);
  };
  EXPECT_LE(median(4096), median(256));
}

TEST(RunConcentration, DeterministicAcrossThreads) {
  setenv("SOT_THREADS", "1", 1);
  const ConcentrationBatch a = RunConcentration(StdNormal(), 256, 0.1, 40, 9);
  setenv("SOT_THREADS", "4", 1);
  const ConcentrationBatch b = RunConcentration(StdNormal(), 256, 0.1, 40, 9);
  unsetenv("SOT_THREADS");
  for (std::size_t i = 0; i < 40; ++i) {
    EXPECT_EQ(a.replications[i].statistic, b.replications[i].statistic) << i;
  }
}

TEST(BerryEsseen, EventFrequency) {
  const double h = 3.0, K = 2.0;
  const double p = std::exp(BernoulliLogWeight(h, K));
  const std::uint64_t n = static_cast<std::uint64_t>(std::ceil(128.0 / p)) * 2;
  const FrequencyReport r = BerryEsseenEventFrequency(h, K, 1.0, n, 2000, 5);
  ASSERT_TRUE(r.applicable);
  EXPECT_TRUE(r.pass) << r.frequency << " vs " << r.band_lower;
  EXPECT_EQ(r.hits, BerryEsseenEventFrequency(h, K, 1.0, n, 2000, 5).hits);
}

TEST(BerryEsseen, Guards) {
  EXPECT_THROW(BerryEsseenEventFrequency(0.1, 2.0, 1.0, 1000, 10, 1), InvalidArgument);
  EXPECT_THROW(BerryEsseenEventFrequency(3.0, 2.0, 1.0, 1000, 0, 1), InvalidArgument);
  const FrequencyReport r = BerryEsseenEventFrequency(3.0, 2.0, 1.0, 100, 10, 1);
  EXPECT_FALSE(r.applicable);
  EXPECT_FALSE(r.diagnostic.empty());
}

TEST(ScheduleGap, ScheduleSizesAreNotFeasible) {
  const HardExample ex = W2HardExample(2.0, 1.0, 6);
  for (int k = 1; k <= 6; ++k) {
    const FrequencyReport r = ScheduleGapDominance(ex.schedule, ex.dist, k, 10, 11);
    EXPECT_FALSE(r.applicable) << k;
    EXPECT_FALSE(r.diagnostic.empty()) << k;
  }
}

TEST(ScheduleGap, SmallestFeasibleSize) {
  // The schedule's own n_1 is too small, so take the least n with
  // n p_2 >= 32768.
  const HardExample ex = W2HardExample(2.0, 1.0, 6);
  const double p2 = ex.dist.weight(2);
  ASSERT_NEAR(ex.dist.x(2), ex.schedule.records[0].r * ex.schedule.records[0].c, 1e-12);
  const std::uint64_t n = static_cast<std::uint64_t>(std::ceil(32768.0 / p2));
  const FrequencyReport r = ScheduleGapDominance(ex.schedule, ex.dist, 1, 2000, 11, n);
  ASSERT_TRUE(r.applicable) << r.diagnostic;
  EXPECT_TRUE(r.pass) << r.frequency << " vs " << r.band_lower;
}

TEST(ScheduleGap, Guards) {
  const HardExample ex = W2HardExample(2.0, 1.0, 6);
  EXPECT_THROW(ScheduleGapDominance(ex.schedule, ex.dist, 1, 0, 1), InvalidArgument);
  EXPECT_THROW(ScheduleGapDominance(ex.schedule, ex.dist, 7, 10, 1), InvalidArgument);
  const FrequencyReport small = ScheduleGapDominance(ex.schedule, ex.dist, 1, 10, 1, 100);
  EXPECT_FALSE(small.applicable);
  EXPECT_FALSE(small.diagnostic.empty());
}

}  // namespace
}  // namespace sot
