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

#include "sot/experiments.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "sot/common.hpp"
#include "sot/constructions.hpp"
#include "sot/divergences.hpp"
#include "sot/mixture.hpp"
#include "sot/sampling.hpp"

namespace sot {
namespace {

RateSeries Series(const std::vector<std::size_t>& n, const std::vector<double>& e,
                  const std::vector<double>& se) {
  RateSeries s;
  for (std::size_t i = 0; i < n.size(); ++i) s.points.push_back({n[i], e[i], se[i], 10});
  return s;
}

McOptions Opts(std::size_t trials, std::uint64_t seed) {
  McOptions o;
  o.trials = trials;
  o.seed = seed;
  return o;
}

TEST(FitRate, ExactPowerLaw) {
  std::vector<std::size_t> n;
  std::vector<double> e, se;
  for (std::size_t k = 6; k <= 14; ++k) {
    n.push_back(std::size_t{1} << k);
    e.push_back(7.0 / n.back());
    se.push_back(0.01 * e.back());
  }
  const RateFit f = FitRate(Series(n, e, se));
  EXPECT_NEAR(f.slope, -1.0, 1e-12);
  EXPECT_NEAR(f.intercept, std::log(7.0), 1e-10);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
  EXPECT_TRUE(f.weighted);
}

TEST(FitRate, NoisyHalfPower) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::size_t> n;
  std::vector<double> e, se;
  for (std::size_t k = 6; k <= 16; ++k) {
    n.push_back(std::size_t{1} << k);
    e.push_back(std::pow(static_cast<double>(n.back()), -0.5) * (1.0 + 0.01 * u(rng)));
    se.push_back(0.01 * e.back());
  }
  const RateFit f = FitRate(Series(n, e, se));
  EXPECT_GE(f.slope, -0.52);
  EXPECT_LE(f.slope, -0.48);
  EXPECT_GE(f.r_squared, 0.0);
  EXPECT_LE(f.r_squared, 1.0);
}

TEST(FitRate, Guards) {
  EXPECT_THROW(FitRate(Series({10, 20}, {1, 0.5}, {0.1, 0.1})), InvalidArgument);
  try {
    FitRate(Series({10, 20, 40, 80}, {1, 0.0, 0.2, -1.0}, {0.1, 0.1, 0.1, 0.1}));
    FAIL() << "nonpositive estimates accepted";
  } catch (const InvalidArgument& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find('1'), std::string::npos) << msg;
    EXPECT_NE(msg.find('3'), std::string::npos) << msg;
  }
  // A zero stderr falls back to ordinary least squares.
  EXPECT_FALSE(FitRate(Series({10, 20, 40}, {1, 0.5, 0.25}, {0, 0.1, 0.1})).weighted);
}

TEST(McExpected, DiracIsExact) {
  const AtomicDistribution d = AtomicDistribution::Dirac(0.3);
  const McEstimate w = McExpectedW2Sq(d, 1.0, 64, Opts(4, 1));
  const McEstimate k = McExpectedKl(d, 1.0, 64, Opts(4, 1));
  for (double v : w.per_trial) EXPECT_NEAR(v, 0.0, 1e-10);
  for (double v : k.per_trial) EXPECT_NEAR(v, 0.0, 1e-10);
  EXPECT_NEAR(w.estimate, 0.0, 1e-10);
  EXPECT_NEAR(k.estimate, 0.0, 1e-10);
  EXPECT_THROW(McExpectedW2Sq(d, 1.0, 64, Opts(1, 1)), InvalidArgument);
  EXPECT_THROW(McExpectedW2Sq(d, 1.0, 0, Opts(4, 1)), InvalidArgument);
}

TEST(McExpected, AgreesWithSortedCoupling) {
  const AtomicDistribution p = BernoulliTwoPoint(2.0, 1.0);
  const double sigma = 2.0;
  const std::size_t n = 512;
  const std::size_t trials = 24;
  const McEstimate quad = McExpectedW2Sq(p, sigma, n, Opts(trials, 8));
  // Independent trials: fresh P_n, then sorted coupling of 10^6 draws each.
  const SmoothedMixture truth(p, sigma);
  const std::size_t m = 1000000;
  std::vector<double> xa(m), xb(m);
  double s = 0.0, ss = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng(DeriveSeed(99, 1, i));
    const SmoothedMixture pn(SampleEmpiricalLaw(p, n, rng), sigma);
    DrawSmoothed(pn, rng, xa);
    DrawSmoothed(truth, rng, xb);
    std::sort(xa.begin(), xa.end());
    std::sort(xb.begin(), xb.end());
    double v = 0.0;
    for (std::size_t k = 0; k < m; ++k) v += (xa[k] - xb[k]) * (xa[k] - xb[k]);
    v /= m;
    s += v;
    ss += v * v;
  }
  const double mean = s / trials;
  const double se = std::sqrt(std::max(0.0, ss / trials - mean * mean) / (trials - 1));
  const double combined = std::hypot(se, quad.stderr_);
  EXPECT_LE(std::fabs(quad.estimate - mean), 3.0 * combined)
      << quad.estimate << " vs " << mean << " (se " << combined << ")";
}

TEST(McExpected, StderrScaling) {
  const AtomicDistribution p = BernoulliTwoPoint(2.0, 1.0);
  const double a = McExpectedW2Sq(p, 1.0, 64, Opts(60, 4)).stderr_;
  const double b = McExpectedW2Sq(p, 1.0, 64, Opts(240, 4)).stderr_;
  EXPECT_NEAR(a / b, 2.0, 0.6);
}

TEST(McExpected, W2IsMeanOfRoots) {
  const AtomicDistribution p = BernoulliTwoPoint(2.0, 1.0);
  const McEstimate sq = McExpectedW2Sq(p, 1.0, 32, Opts(6, 2));
  const McEstimate w = McExpectedW2(p, 1.0, 32, Opts(6, 2));
  double s = 0.0;
  for (double v : sq.per_trial) s += std::sqrt(v);
  EXPECT_NEAR(w.estimate, s / 6.0, 1e-12);
}

TEST(McExpected, DeterministicAcrossThreads) {
  const AtomicDistribution p = BernoulliTwoPoint(3.0, 2.0);
  McOptions o = Opts(30, 5);
  o.early_stop_rel = 0.05;
  o.batch = 7;
  setenv("SOT_THREADS", "1", 1);
  const McEstimate a = McExpectedW2Sq(p, 1.0, 128, o);
  setenv("SOT_THREADS", "3", 1);
  const McEstimate b = McExpectedW2Sq(p, 1.0, 128, o);
  unsetenv("SOT_THREADS");
  EXPECT_EQ(a.trials, b.trials);
  EXPECT_EQ(a.per_trial, b.per_trial);
  EXPECT_EQ(a.estimate, b.estimate);
}

TEST(McExpected, W2SqDecreasesInN) {
  const AtomicDistribution p = BernoulliTwoPoint(2.0, 1.0);
  McEstimate prev = McExpectedW2Sq(p, 1.0, 64, Opts(100, 6));
  for (std::size_t n : {128u, 256u, 512u}) {
    const McEstimate cur = McExpectedW2Sq(p, 1.0, n, Opts(100, 6));
    EXPECT_LE(cur.estimate, prev.estimate + cur.stderr_ + prev.stderr_) << n;
    prev = cur;
  }
}

TEST(McExpected, KlBelowSoftCoveringBound) {
  const AtomicDistribution p = BernoulliTwoPoint(4.0, 2.0);
  const double R = DefaultTruncationRadius(p, 1.0, 1e-12);
  McEstimate prev;
  for (std::size_t n : {64u, 128u, 256u, 512u}) {
    const McEstimate kl = McExpectedKl(p, 1.0, n, Opts(60, 12));
    const double lam = 2.0 - 1.0 / std::log(static_cast<double>(n));
    const double bound =
        SoftCoveringKlBound(RenyiMutualInformation(p, 1.0, lam, R).value, lam, n);
    EXPECT_GE(kl.estimate, 0.0);
    EXPECT_LE(kl.estimate, bound + 3.0 * kl.stderr_) << n;
    if (n > 64) EXPECT_LE(kl.estimate, prev.estimate + kl.stderr_ + prev.stderr_) << n;
    prev = kl;
  }
}

TEST(BernoulliScan, Plan) {
  const BernoulliScanPlan plan = PlanBernoulliScan(2.0, 1.0, 0.02, {256, 4096, 65536});
  EXPECT_NEAR(plan.zeta, 25.0 / 128.0, 1e-16);
  EXPECT_GT(plan.delta, 0.0);
  EXPECT_LT(plan.delta, 0.5);
  EXPECT_GT(plan.zeta, 1.0 / 8.0);
  ASSERT_EQ(plan.records.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    const BernoulliScanRecord& r = plan.records[i];
    EXPECT_NEAR(r.np, r.n * std::exp(r.log_p), 1e-9 * r.np);
    EXPECT_EQ(r.feasible, r.np >= 128.0);
    EXPECT_NEAR(r.probe, BernoulliProbe(r.h, 2.0, 1.0), 1e-12);
    if (i > 0) EXPECT_GT(r.h, plan.records[i - 1].h);
  }
  EXPECT_THROW(PlanBernoulliScan(1.0, 1.0, 0.02, {256}), InvalidArgument);
  EXPECT_THROW(PlanBernoulliScan(2.0, 1.0, 0.02, {512, 256}), InvalidArgument);
}

TEST(BernoulliScan, SkipsInfeasiblePoints) {
  const std::vector<std::size_t> n_list = {16, 1024, std::size_t{1} << 20};
  const BernoulliScanPlan plan = PlanBernoulliScan(2.0, 1.0, 0.02, n_list);
  EXPECT_FALSE(plan.records[0].feasible);
  EXPECT_FALSE(plan.records[1].feasible);
  EXPECT_TRUE(plan.records[2].feasible);
  const BernoulliScanResult res = BernoulliScan(2.0, 1.0, 0.02, n_list, Opts(4, 3));
  ASSERT_EQ(res.w2.points.size(), 1u);
  EXPECT_EQ(res.w2.points[0].n, n_list[2]);
  EXPECT_EQ(res.w2_sq.points.size(), 1u);
  EXPECT_GT(res.w2.points[0].estimate, 0.0);
}

TEST(PhaseScan, EmptyKListGivesEmptyTable) {
  EXPECT_TRUE(PhaseScan({}, 1.0, "two_point", 2.0, {64, 128, 256}, Opts(4, 1)).empty());
  EXPECT_THROW(PhaseScan({1.0}, 1.0, "other", 2.0, {64, 128, 256}, Opts(4, 1)),
               InvalidArgument);
}

}  // namespace
}  // namespace sot
