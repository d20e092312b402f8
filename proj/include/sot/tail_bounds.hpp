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

#ifndef SOT_TAIL_BOUNDS_HPP_
#define SOT_TAIL_BOUNDS_HPP_

#include <vector>

#include "sot/common.hpp"
#include "sot/constructions.hpp"
#include "sot/distribution.hpp"
#include "sot/mixture.hpp"

namespace sot {

// beta = 4 K^2 / (1 + K^2)^2 at sigma = 1.
double BetaExponent(double K);
// alpha = (sigma^2 + K^2)^2 / (4 (sigma^4 + K^4)).
double AlphaExponent(double K, double sigma);

struct TailDensityPoint {
  double r = 0.0;
  double log_tail = 0.0;     // log(1 - F(r)), or log F(r) on the mirrored side
  double log_density = 0.0;  // log rho(r)
  double log_ratio = 0.0;    // log_tail - (beta - eps) log_density
  double tightness = 0.0;    // log_tail / log_density
};

struct TailDensityReport {
  double beta = 0.0;
  double exponent = 0.0;  // beta - epsilon
  double log_m_hat = kNegInf;
  double m_hat = 0.0;
  std::vector<TailDensityPoint> points;
  std::vector<TailDensityPoint> mirrored;
};

// M-hat = sup over the grid of (1 - F(r)) / rho(r)^(beta - eps), and of
// F(-r) / rho(-r)^(beta - eps) on the mirrored side. sigma must be 1.
TailDensityReport TailDensityInequalityProbe(const SmoothedMixture& m, double K,
                                             double epsilon,
                                             const std::vector<double>& r_grid);

struct DensityTailLowerReport {
  double exponent = 0.0;    // 1 / (beta - eps)
  double log_c_hat = 0.0;   // inf over the grid, +inf when every tail is empty
  double log_c_last_decade = 0.0;
  bool pass = true;
  std::vector<double> log_ratio;  // log rho(r) - log P[X >= r] / (beta - eps)
};

DensityTailLowerReport DensityTailLowerProbe(const SmoothedMixture& m, double K,
                                             double epsilon,
                                             const std::vector<double>& r_grid);

struct IntervalBounds {
  int k = 0;
  double log_prob_lower_interval = 0.0;  // log P(X in [t r + 1, t r + 2])
  double log_prob_upper_interval = 0.0;  // log P(X in [t r, t r + 2])
  double lower_exponent = 0.0;
  double upper_exponent = 0.0;
  double log_cl = 0.0;
  double log_cu = 0.0;
  double log_cl_paper = 0.0;  // log(1 / (2 pi sigma K))
  bool cl_holds = true;
};

// The constant assembled in the upper-bound proof from its four pieces.
double ExplicitUpperConstant(double K, double sigma);

IntervalBounds IntervalProbBounds(const HardExampleSchedule& schedule,
                                  const AtomicDistribution& p, int k);

}  // namespace sot

#endif  // SOT_TAIL_BOUNDS_HPP_
