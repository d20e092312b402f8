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

#include "sot/quadrature.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "sot/common.hpp"

namespace sot {
namespace {

TEST(Quadrature, KnownIntegrals) {
  QuadratureOptions o;
  o.abs_tol = 1e-12;
  EXPECT_NEAR(IntegrateAdaptive([](double t) { return std::sin(t); }, {0.0, M_PI}, o).value,
              2.0, 1e-11);
  const QuadratureResult g = IntegrateAdaptive(
      [](double t) { return std::exp(-0.5 * t * t); }, BuildPartition(-40, 40, 0.5, {0.0}), o);
  EXPECT_NEAR(g.value, std::sqrt(2.0 * M_PI), 1e-11);
  EXPECT_TRUE(g.converged);
  EXPECT_LE(g.error, g.target);
  // Square-root cusp at 0: int_0^1 sqrt(t) dt = 2/3.
  EXPECT_NEAR(IntegrateAdaptive([](double t) { return std::sqrt(t); }, {0.0, 1.0}, o).value,
              2.0 / 3.0, 1e-10);
}

TEST(Quadrature, RelativeTargetForTinyIntegrals) {
  QuadratureOptions o;
  o.abs_tol = 1e-10;
  o.rel_tol = 1e-9;
  const double scale = 1e-30;
  const QuadratureResult r =
      IntegrateAdaptive([&](double t) { return scale * std::exp(-t); }, {0.0, 1.0, 5.0, 30.0}, o);
  EXPECT_NEAR(r.value / (scale * -std::expm1(-30.0)), 1.0, 1e-8);
}

TEST(Quadrature, LargeIntegralsTerminate) {
  // Absolute 1e-10 on a value of 1e12 is below rounding; the noise floor
  // must stop refinement instead of recursing to max depth everywhere.
  QuadratureOptions o;
  o.abs_tol = 1e-10;
  o.rel_tol = 1e-10;
  const QuadratureResult r = IntegrateAdaptive(
      [](double t) { return 1e12 * std::exp(-0.5 * t * t); }, BuildPartition(-40, 40, 0.5, {0.0}),
      o);
  EXPECT_NEAR(r.value / (1e12 * std::sqrt(2.0 * M_PI)), 1.0, 1e-12);
  EXPECT_LT(r.evaluations, 200000u);
}

TEST(Quadrature, NonFiniteIntegrandThrows) {
  QuadratureOptions o;
  EXPECT_THROW(IntegrateAdaptive([](double t) { return 1.0 / t; }, {0.0, 1.0}, o), NumericError);
}

TEST(Quadrature, EmptyBreakpoints) {
  QuadratureOptions o;
  EXPECT_EQ(IntegrateAdaptive([](double) { return 1.0; }, {1.0}, o).value, 0.0);
}

TEST(Quadrature, LeavesTileTheRange) {
  QuadratureOptions o;
  o.keep_leaves = true;
  const QuadratureResult r =
      IntegrateAdaptive([](double t) { return t * t; }, {-1.0, 0.0, 2.0}, o);
  ASSERT_FALSE(r.leaves.empty());
  EXPECT_EQ(r.leaves.front().a, -1.0);
  EXPECT_EQ(r.leaves.back().b, 2.0);
  double s = 0.0;
  for (std::size_t i = 0; i < r.leaves.size(); ++i) {
    if (i > 0) EXPECT_EQ(r.leaves[i].a, r.leaves[i - 1].b);
    s += r.leaves[i].value;
  }
  EXPECT_NEAR(s, 3.0, 1e-12);
  EXPECT_NEAR(r.value, 3.0, 1e-12);
}

TEST(Partition, UniformAndCentered) {
  const std::vector<double> u = BuildPartition(0.0, 1.0, 0.1, {});
  EXPECT_EQ(u.size(), 11u);
  EXPECT_EQ(u.front(), 0.0);
  EXPECT_EQ(u.back(), 1.0);
  // Too wide for a uniform grid: points cluster near the centers.
  const std::vector<double> w = BuildPartition(-1e6, 1e6, 0.1, {0.0, 500.0});
  EXPECT_TRUE(std::is_sorted(w.begin(), w.end()));
  EXPECT_EQ(w.front(), -1e6);
  EXPECT_EQ(w.back(), 1e6);
  EXPECT_LT(w.size(), 5000u);
  EXPECT_TRUE(std::binary_search(w.begin(), w.end(), 500.0));
  EXPECT_THROW(BuildPartition(1.0, 0.0, 0.1, {}), InvalidArgument);
}

TEST(Partition, MixtureReachesFarTails) {
  const std::vector<double> p = BuildMixturePartition({2.0, -1.0}, 1.5, 0.5, 12.0, 38.0);
  EXPECT_NEAR(p.front(), -1.0 - 38.0 * 1.5, 1e-12);
  EXPECT_NEAR(p.back(), 2.0 + 38.0 * 1.5, 1e-12);
  EXPECT_TRUE(std::is_sorted(p.begin(), p.end()));
  EXPECT_THROW(BuildMixturePartition({}, 1.0, 0.5, 12.0, 38.0), InvalidArgument);
}

}  // namespace
}  // namespace sot
