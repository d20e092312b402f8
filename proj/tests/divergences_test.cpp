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

#include "sot/divergences.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sot/common.hpp"
#include "sot/constructions.hpp"
#include "sot/sampling.hpp"

namespace sot {
namespace {

SmoothedMixture Gauss(double mu, double sigma = 1.0) {
  return SmoothedMixture(AtomicDistribution::Dirac(mu), sigma);
}

SmoothedMixture RandomMixture(Rng& rng) {
  std::uniform_real_distribution<double> loc(-3.0, 3.0), w(0.2, 1.0), s(0.6, 1.4);
  const int atoms = 1 + static_cast<int>(rng() % 3);
  std::vector<double> x, ws;
  for (int i = 0; i < atoms; ++i) {
    x.push_back(loc(rng));
    ws.push_back(w(rng));
  }
  return SmoothedMixture(AtomicDistribution::FromWeights(x, ws), s(rng));
}

// Trapezoid sum of rho_A log(rho_A / rho_B) on a fixed grid.
double KlRiemann(const SmoothedMixture& a, const SmoothedMixture& b, double lo, double hi,
                 double step) {
  const long n = std::lround((hi - lo) / step);
  double s = 0.0;
  for (long i = 0; i <= n; ++i) {
    const double t = lo + (hi - lo) * i / n;
    const double la = a.LogPdf(t);
    const double v = std::exp(la) * (la - b.LogPdf(t));
    s += (i == 0 || i == n) ? 0.5 * v : v;
  }
  return s * (hi - lo) / n;
}

TEST(Divergence, IdenticalLawsAreZero) {
  const SmoothedMixture m(AtomicDistribution::FromWeights({-1, 2}, {1, 3}), 0.9);
  EXPECT_NEAR(KlDivergence(m, m).value, 0.0, 1e-10);
  EXPECT_NEAR(Chi2Divergence(m, m).value, 0.0, 1e-10);
  EXPECT_NEAR(RenyiDivergence(m, m, 1.5).value, 0.0, 1e-10);
}

TEST(Divergence, GaussianClosedForms) {
  EXPECT_NEAR(KlDivergence(Gauss(0), Gauss(2)).value, 2.0, 1e-8);
  EXPECT_NEAR(Chi2Divergence(Gauss(0), Gauss(1)).value, std::exp(1.0) - 1.0, 1e-7);
  EXPECT_NEAR(RenyiDivergence(Gauss(0), Gauss(1), 2.0).value, 1.0, 1e-7);
  // D_lambda(N(0,1) || N(mu,1)) = lambda mu^2 / 2.
  EXPECT_NEAR(RenyiDivergence(Gauss(0), Gauss(0.3), 1.5).value, 1.5 * 0.09 / 2.0, 1e-9);
  // Relative accuracy for nearly equal laws.
  EXPECT_NEAR(KlDivergence(Gauss(0), Gauss(1e-4)).value, 0.5e-8, 1e-15);
}

TEST(Divergence, Chi2UnequalScales) {
  // 1 + chi2 = sb^2 / (sa sqrt(2 sb^2 - sa^2)) exp(dm^2 / (2 sb^2 - sa^2)).
  auto closed = [](double ma, double sa, double mb, double sb) {
    const double d = 2.0 * sb * sb - sa * sa;
    return std::expm1(std::log(sb * sb / (sa * std::sqrt(d))) + (ma - mb) * (ma - mb) / d);
  };
  EXPECT_NEAR(Chi2Divergence(Gauss(0.5, 1.2), Gauss(0, 1)).value, closed(0.5, 1.2, 0, 1),
              1e-9);
  // The integrand peaks near t = -74, far outside the atoms.
  const double ma = -1.7936059385130791, sa = 1.1898251721790478;
  const double mb = 2.8523228901660644, sb = 0.86808224396100175;
  const double want = closed(ma, sa, mb, sb);
  EXPECT_NEAR(Chi2Divergence(Gauss(ma, sa), Gauss(mb, sb)).value / want, 1.0, 1e-9);
  EXPECT_EQ(Chi2Divergence(Gauss(0, 1.5), Gauss(0, 1)).value, kInf);
}

TEST(Divergence, KlMatchesFixedGridOracle) {
  const SmoothedMixture a(AtomicDistribution::FromWeights({-1, 1.5}, {2, 1}), 1.0);
  const SmoothedMixture b(AtomicDistribution::FromWeights({0, 2}, {1, 1}), 1.2);
  const double tol = 1e-10;
  const double coarse = KlRiemann(a, b, -40.0, 40.0, 0.01);
  const double fine = KlRiemann(a, b, -40.0, 40.0, 0.005);
  EXPECT_NEAR(coarse, fine, 10 * tol);
  EXPECT_NEAR(KlDivergence(a, b, tol).value, fine, 10 * tol);
}

TEST(Divergence, OrderingOnRandomPairs) {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const SmoothedMixture a = RandomMixture(rng);
    const SmoothedMixture b = RandomMixture(rng);
    const double kl = KlDivergence(a, b).value;
    const double chi2 = Chi2Divergence(a, b).value;
    EXPECT_GE(kl, 0.0);
    EXPECT_GE(chi2, kl) << i;
    EXPECT_GE(std::log1p(chi2) + 1e-10, kl) << i;
  }
}

TEST(Divergence, RenyiMonotoneAndLimits) {
  Rng rng(12);
  for (int i = 0; i < 20; ++i) {
    const SmoothedMixture a = RandomMixture(rng);
    const SmoothedMixture b = RandomMixture(rng);
    const double d11 = RenyiDivergence(a, b, 1.1).value;
    const double d15 = RenyiDivergence(a, b, 1.5).value;
    const double d19 = RenyiDivergence(a, b, 1.9).value;
    EXPECT_LE(d11, d15 + 1e-10) << i;
    EXPECT_LE(d15, d19 + 1e-10) << i;
    const double kl = KlDivergence(a, b).value;
    // D_lambda = KL + (lambda - 1) c + O((lambda - 1)^2); cancel the linear term.
    const double extrap =
        2.0 * RenyiDivergence(a, b, 1.0005).value - RenyiDivergence(a, b, 1.001).value;
    EXPECT_NEAR(extrap, kl, 1e-4 * (1.0 + kl)) << i;
    const double d2 = RenyiDivergence(a, b, 2.0).value;
    const double via_chi2 = std::log1p(Chi2Divergence(a, b).value);
    if (std::isinf(d2) || std::isinf(via_chi2)) {
      EXPECT_EQ(d2, via_chi2) << i;
    } else {
      EXPECT_NEAR(d2, via_chi2, 1e-8 * (1.0 + d2)) << i;
    }
  }
  EXPECT_THROW(RenyiDivergence(Gauss(0), Gauss(1), 1.0), InvalidArgument);
  EXPECT_THROW(RenyiDivergence(Gauss(0), Gauss(1), 2.5), InvalidArgument);
}

TEST(MutualInformation, SingleAtomIsZero) {
  const AtomicDistribution p = AtomicDistribution::Dirac(1.5);
  const double R = DefaultTruncationRadius(p, 1.0, 1e-10);
  EXPECT_NEAR(Chi2MutualInformation(p, 1.0, R).value, 0.0, 1e-10);
  EXPECT_NEAR(RenyiMutualInformation(p, 1.0, 1.5, R).value, 0.0, 1e-10);
}

TEST(MutualInformation, Chi2MatchesTensorGrid) {
  const AtomicDistribution p = AtomicDistribution::FromWeights({0, 1}, {1, 1});
  const double sigma = 1.0;
  const double tol = 1e-10;
  const double R = DefaultTruncationRadius(p, sigma, tol);
  // sum_k w_k int phi_k^2 / rho - 1 on a fine grid over [-R, R].
  const SmoothedMixture rho(p, sigma);
  const long n = 400000;
  double s = 0.0;
  for (long i = 0; i <= n; ++i) {
    const double y = -R + 2.0 * R * i / n;
    double v = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double lp = -0.5 * (y - p.x(k)) * (y - p.x(k)) - 0.9189385332046727;
      v += p.weight(k) * std::exp(2.0 * lp - rho.LogPdf(y));
    }
    s += (i == 0 || i == n) ? 0.5 * v : v;
  }
  const double oracle = s * 2.0 * R / n - 1.0;
  EXPECT_NEAR(Chi2MutualInformation(p, sigma, R, tol).value, oracle, 10 * tol);
}

TEST(MutualInformation, RenyiNearOneMatchesKlDecomposition) {
  const AtomicDistribution p = AtomicDistribution::FromWeights({0, 1.5, 3}, {2, 1, 1});
  const double sigma = 1.0;
  const SmoothedMixture rho(p, sigma);
  double mi = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    mi += p.weight(k) * KlDivergence(Gauss(p.x(k), sigma), rho).value;
  }
  const double R = DefaultTruncationRadius(p, sigma, 1e-12);
  EXPECT_NEAR(RenyiMutualInformation(p, sigma, 1.001, R).value, mi, 1e-2);
}

TEST(MutualInformation, GrowsWithRadius) {
  const AtomicDistribution p = BernoulliTwoPoint(2.0, 0.5);
  double prev = 0.0;
  for (double R : {2.0, 4.0, 8.0, 16.0}) {
    const MIEstimate e = Chi2MutualInformation(p, 1.0, R);
    EXPECT_GE(e.value, prev - 1e-14);
    double sum = 0.0;
    for (double v : e.partial_by_atom) {
      EXPECT_GE(v, 0.0);
      sum += v;
    }
    EXPECT_NEAR(sum, e.value, 1e-12);
    prev = e.value;
  }
}

TEST(MutualInformation, RenyiCombinationStaysBounded) {
  // (lambda - 1) I_lambda + log(2 - lambda) must not grow as lambda -> 2.
  const AtomicDistribution p = BernoulliTwoPoint(4.0, 2.0);
  const double R = DefaultTruncationRadius(p, 1.0, 1e-12);
  const double first = 0.5 * RenyiMutualInformation(p, 1.0, 1.5, R).value + std::log(0.5);
  for (double lam : {1.9, 1.99}) {
    const double v = RenyiMutualInformation(p, 1.0, lam, R).value;
    ASSERT_TRUE(std::isfinite(v));
    EXPECT_LE((lam - 1.0) * v + std::log(2.0 - lam), first) << lam;
  }
}

TEST(SoftCovering, PlugIns) {
  for (double lam : {1.2, 1.5, 2.0}) {
    EXPECT_NEAR(SoftCoveringKlBound(std::log(1000.0), lam, 1000.0), std::log(2.0) / (lam - 1.0),
                1e-14);
    const double small = SoftCoveringKlBound(-8000.0, lam, 1000.0);
    EXPECT_GE(small, 0.0);
    EXPECT_LT(small, 1e-100);
    // Large I: the bound approaches I - log n.
    EXPECT_NEAR(SoftCoveringKlBound(1000.0, lam, 10.0), 1000.0 - std::log(10.0), 1e-10);
  }
}

TEST(SoftCovering, ScaledBoundStaysBounded) {
  const AtomicDistribution p = BernoulliTwoPoint(4.0, 2.0);
  const double R = DefaultTruncationRadius(p, 1.0, 1e-12);
  double first = 0.0;
  for (int k = 8; k <= 14; ++k) {
    const double n = std::ldexp(1.0, k);
    const double lam = 2.0 - 1.0 / std::log(n);
    const double i_lam = RenyiMutualInformation(p, 1.0, lam, R).value;
    ASSERT_TRUE(std::isfinite(i_lam));
    const double ratio = SoftCoveringKlBound(i_lam, lam, n) / (std::log(n) / n);
    if (k == 8) first = ratio;
    EXPECT_LE(ratio, first * (1.0 + 1e-12)) << n;
  }
}

}  // namespace
}  // namespace sot
