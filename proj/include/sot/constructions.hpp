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

// Distribution families with heavy-but-subgaussian tails, and the schedules
// that go with them.

#ifndef SOT_CONSTRUCTIONS_HPP_
#define SOT_CONSTRUCTIONS_HPP_

#include <cstdint>
#include <vector>

#include "sot/distribution.hpp"

namespace sot {

// (1 - p) delta_0 + p delta_h with p = exp(-h^2 / (2 K^2)).
AtomicDistribution BernoulliTwoPoint(double h, double K);
double BernoulliLogWeight(double h, double K);

// Geometric-radius family: r_0 = 0, r_k = c^{k-1}, p_k = c1 exp(-r_k^2 / 2K^2)
// for 1 <= k <= k_max, remaining mass on r_0.
double ChiSquareWeightConstant(double K);
// Smallest ratio c > 2 for which the pairwise density overlap terms stay
// nonpositive at every pair of radii.
double ChiSquareMinRatio(double K);
AtomicDistribution ChiSquareHardExample(double K, double c, int k_max);

struct ScheduleRecord {
  int k = 0;
  double c = 0.0;       // c_k
  double r = 0.0;       // r_k
  double t = 0.0;       // t_k
  double log_p = 0.0;   // log p_k
  double probe = 0.0;   // t_k r_k
  double log_n = 0.0;   // log of the unfloored sample size
  std::uint64_t n = 0;  // floor, saturated at UINT64_MAX
  bool n_saturated = false;
  double log_cu = 0.0;  // interval-bound constant measured at this k
};

struct HardExampleSchedule {
  double K = 0.0;
  double sigma = 0.0;
  double kappa = 0.0;
  double M = 0.0;
  double C = 0.0;       // weight prefactor
  double log_cu = 0.0;  // constant used for n_k: max over the measured k
  std::vector<ScheduleRecord> records;  // k = 1..k_max
};

struct HardExample {
  AtomicDistribution dist;
  HardExampleSchedule schedule;
};

// Requires sigma < K. Atoms r_1..r_{k_max + 1} so every record has p_{k+1}.
HardExample W2HardExample(double K, double sigma, int k_max);

struct MgfReport {
  std::size_t points = 0;
  double max_gap = 0.0;    // max over the grid of the log-MGF excess
  double arg_alpha = 0.0;
  bool pass = true;
};

// g(alpha) = log E exp(alpha (S - E S)) - K^2 alpha^2 / 2; pass iff max <= 1e-9.
MgfReport MgfSubgaussianCheck(const AtomicDistribution& p, double K,
                              const std::vector<double>& alpha_grid);
// Uncentered form with a prefactor: log E exp(alpha S) - log 2 - K^2 alpha^2 / 2.
MgfReport MgfSubgaussianCheckWeak(const AtomicDistribution& p, double K,
                                  const std::vector<double>& alpha_grid);

struct ExpSquareMoment {
  double log_value = 0.0;
  bool overflow = false;        // value exceeds the double range
  std::vector<double> log_partial;  // log of partial sums over atoms by |x|
  std::vector<double> log_increment;
};

ExpSquareMoment ExpSquareMomentOf(const AtomicDistribution& p, double a);

// Bernoulli schedule pieces.
double BernoulliZeta(double K, double sigma);
// Root of the implicit equation linking delta to epsilon, by bisection.
double BernoulliDelta(double K, double sigma, double epsilon);
double BernoulliH(double K, double sigma, double delta, double n);
double BernoulliProbe(double h, double K, double sigma);

}  // namespace sot

#endif  // SOT_CONSTRUCTIONS_HPP_
