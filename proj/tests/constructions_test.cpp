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

#include "sot/constructions.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "sot/common.hpp"

namespace sot {
namespace {

std::vector<double> Grid(double lo, double hi, double step) {
  std::vector<double> g;
  for (double a = lo; a <= hi + 1e-12; a += step) g.push_back(a);
  return g;
}

TEST(BernoulliTwoPoint, Weights) {
  const AtomicDistribution p = BernoulliTwoPoint(2.0, 1.0);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_NEAR(p.weight(1), std::exp(-2.0), 1e-15);
  EXPECT_NEAR(p.weight(1), 0.1353353, 1e-7);
  EXPECT_NEAR(p.weight(0) + p.weight(1), 1.0, 1e-15);
  EXPECT_NEAR(BernoulliTwoPoint(3.0 * std::sqrt(2.0 * std::log(4.0)), 3.0).weight(1), 0.25,
              1e-15);
  EXPECT_NEAR(BernoulliTwoPoint(2.0 * 3.0 * std::sqrt(std::log(4.0)), 3.0).weight(1), 1.0 / 16.0,
              1e-15);
  EXPECT_THROW(BernoulliTwoPoint(0.0, 1.0), InvalidArgument);
  EXPECT_THROW(BernoulliTwoPoint(1.0, -1.0), InvalidArgument);
}

TEST(ChiSquareHardExample, AtomsAndWeights) {
  const double K = 2.0;
  const AtomicDistribution p = ChiSquareHardExample(K, 3.0, 8);
  ASSERT_EQ(p.size(), 9u);
  const double lc1 = std::log(ChiSquareWeightConstant(K));
  double r = 1.0;
  for (std::size_t k = 1; k < p.size(); ++k) {
    EXPECT_DOUBLE_EQ(p.x(k), r);
    EXPECT_NEAR(p.logw(k), lc1 - r * r / 8.0, 1e-12 * (1.0 + r * r / 8.0));
    r *= 3.0;
  }
  EXPECT_DOUBLE_EQ(p.x(0), 0.0);
  EXPECT_GT(p.weight(0), 0.5);
}

TEST(ChiSquareHardExample, EmptyTailIsDirac) {
  const AtomicDistribution p = ChiSquareHardExample(2.0, 3.0, 0);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.x(0), 0.0);
}

TEST(ChiSquareHardExample, CentralMassOverRange) {
  for (double K : {1.2, 2.0, 5.0}) {
    for (double c : {2.5, 3.0, 8.6}) {
      EXPECT_GT(ChiSquareHardExample(K, c, 12).weight(0), 0.5) << K << " " << c;
    }
  }
}

TEST(ChiSquareHardExample, Subgaussian) {
  const MgfReport r = MgfSubgaussianCheck(ChiSquareHardExample(2.0, 3.0, 12), 2.0,
                                          Grid(-8.0, 8.0, 0.01));
  EXPECT_TRUE(r.pass) << r.max_gap << " at " << r.arg_alpha;
  EXPECT_LE(r.max_gap, 0.0);
}

TEST(W2HardExample, ScheduleConstants) {
  const HardExample ex = W2HardExample(2.0, 1.0, 4);
  const HardExampleSchedule& s = ex.schedule;
  EXPECT_NEAR(s.kappa, 0.25, 1e-15);
  EXPECT_NEAR(s.M, 13.0 / 3.0, 1e-14);
  ASSERT_EQ(s.records.size(), 4u);
  EXPECT_EQ(s.records[0].r, 1.0);
  EXPECT_NEAR(s.records[0].c, s.M, 1e-14);
  EXPECT_NEAR(s.records[0].t, 0.5 * (s.M + 1.0) * 1.25, 1e-14);
  EXPECT_NEAR(s.records[0].t, 10.0 / 3.0, 1e-14);
  EXPECT_NEAR(s.records[1].r, s.M, 1e-14);
  for (const ScheduleRecord& rec : s.records) EXPECT_NEAR(rec.probe, rec.t * rec.r, 1e-12);
  double tail = 0.0;
  for (std::size_t k = 1; k < ex.dist.size(); ++k) tail += ex.dist.weight(k);
  EXPECT_LE(tail, 0.5 + 1e-12);
  EXPECT_THROW(W2HardExample(1.0, 1.0, 3), InvalidArgument);
  EXPECT_THROW(W2HardExample(1.0, 2.0, 3), InvalidArgument);
}

TEST(W2HardExample, WeakSubgaussian) {
  const HardExample ex = W2HardExample(2.0, 1.0, 4);
  const MgfReport r = MgfSubgaussianCheckWeak(ex.dist, 2.0, Grid(-5.0, 5.0, 0.01));
  EXPECT_TRUE(r.pass) << r.max_gap << " at " << r.arg_alpha;
}

TEST(W2HardExample, Deterministic) {
  const HardExample a = W2HardExample(2.0, 1.0, 5);
  const HardExample b = W2HardExample(2.0, 1.0, 5);
  ASSERT_EQ(a.schedule.records.size(), b.schedule.records.size());
  for (std::size_t i = 0; i < a.schedule.records.size(); ++i) {
    EXPECT_EQ(a.schedule.records[i].log_n, b.schedule.records[i].log_n);
  }
  EXPECT_EQ(a.dist.log_weights(), b.dist.log_weights());
}

TEST(MgfCheck, ClassicalCases) {
  const MgfReport dirac = MgfSubgaussianCheck(AtomicDistribution::Dirac(0.0), 1.5,
                                              Grid(-3.0, 3.0, 0.5));
  EXPECT_TRUE(dirac.pass);
  // g(alpha) = -K^2 alpha^2 / 2, maximal at alpha = 0.
  EXPECT_NEAR(dirac.max_gap, 0.0, 1e-15);
  const AtomicDistribution rademacher = AtomicDistribution::FromWeights({-1, 1}, {1, 1});
  const MgfReport r = MgfSubgaussianCheck(rademacher, 1.0, Grid(-10.0, 10.0, 0.1));
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.max_gap, 0.0);
  // Variance 1 cannot be 0.9-subgaussian.
  EXPECT_FALSE(MgfSubgaussianCheck(rademacher, 0.9, Grid(-1.0, 1.0, 0.1)).pass);
}

TEST(ExpSquareMoment, DiracIsOne) {
  const ExpSquareMoment m = ExpSquareMomentOf(AtomicDistribution::Dirac(0.0), 3.0);
  EXPECT_EQ(m.log_value, 0.0);
  EXPECT_FALSE(m.overflow);
}

TEST(ExpSquareMoment, ConvergesBelowCriticalExponent) {
  const AtomicDistribution p = ChiSquareHardExample(2.0, 3.0, 10);
  const ExpSquareMoment m = ExpSquareMomentOf(p, 1.0 / 16.0);
  const std::vector<double>& li = m.log_increment;
  ASSERT_EQ(li.size(), 11u);
  // Successive truncation deltas shrink at least geometrically.
  for (std::size_t k = 3; k < li.size(); ++k) {
    EXPECT_LT(li[k], li[k - 1] - std::log(2.0)) << k;
  }
  EXPECT_NEAR(m.log_partial.back(), m.log_partial[4], 1e-12);
  EXPECT_FALSE(m.overflow);
}

TEST(ExpSquareMoment, DivergesAboveCriticalExponent) {
  const AtomicDistribution p = ChiSquareHardExample(2.0, 3.0, 10);
  const ExpSquareMoment m = ExpSquareMomentOf(p, 0.25);
  const std::vector<double>& lp = m.log_partial;
  for (std::size_t k = 3; k < lp.size(); ++k) {
    EXPECT_GT(lp[k] - lp[k - 1], lp[k - 1] - lp[k - 2]) << k;
  }
  EXPECT_TRUE(m.overflow);
}

TEST(BernoulliSchedule, Zeta) {
  EXPECT_NEAR(BernoulliZeta(2.0, 1.0), 25.0 / 128.0, 1e-16);
}

TEST(BernoulliSchedule, DeltaDecreasesWithEpsilon) {
  double prev = kInf;
  for (double eps : {0.05, 0.02, 0.01, 1e-3, 1e-4, 1e-6}) {
    const double d = BernoulliDelta(2.0, 1.0, eps);
    EXPECT_GT(d, 0.0);
    EXPECT_LT(d, prev) << eps;
    prev = d;
  }
  EXPECT_LT(prev, 1e-4);
  EXPECT_THROW(BernoulliDelta(2.0, 1.0, 0.0), InvalidArgument);
}

TEST(BernoulliSchedule, HGrowsWithN) {
  const double d = BernoulliDelta(2.0, 1.0, 0.02);
  const double h1 = BernoulliH(2.0, 1.0, d, 1024.0);
  const double h2 = BernoulliH(2.0, 1.0, d, 65536.0);
  EXPECT_GT(h2, h1);
  EXPECT_NEAR(BernoulliProbe(4.0, 2.0, 1.0), 2.0 + 4.0 / 8.0, 1e-15);
}

}  // namespace
}  // namespace sot
