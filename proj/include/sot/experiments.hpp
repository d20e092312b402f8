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

// Monte Carlo rate experiments for the smoothed empirical measure.

#ifndef SOT_EXPERIMENTS_HPP_
#define SOT_EXPERIMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sot/distribution.hpp"

namespace sot {

struct McOptions {
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  // Stop after a completed batch once stderr / estimate falls below this;
  // 0 disables. Batches have a fixed size so the stopping point does not
  // depend on the thread count.
  double early_stop_rel = 0.0;
  std::size_t batch = 20;
};

struct McEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::size_t trials = 0;
  std::vector<double> per_trial;
};

// Per trial: P_n from p, then W2^2 (or KL) between P_n * N(0, sigma^2) and
// P * N(0, sigma^2).
McEstimate McExpectedW2Sq(const AtomicDistribution& p, double sigma, std::size_t n,
                          const McOptions& opt);
// Mean of the per-trial W2 (square roots of the W2^2 values).
McEstimate McExpectedW2(const AtomicDistribution& p, double sigma, std::size_t n,
                        const McOptions& opt);
McEstimate McExpectedKl(const AtomicDistribution& p, double sigma, std::size_t n,
                        const McOptions& opt);

struct RatePoint {
  std::size_t n = 0;
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::size_t trials = 0;
};

struct RateSeries {
  std::vector<RatePoint> points;
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r_squared = 0.0;
  bool weighted = true;
};

// Least squares of log(estimate) on log(n) with weights (estimate / stderr)^2;
// unweighted when any stderr is zero.
RateFit FitRate(const RateSeries& series);

struct BernoulliScanRecord {
  std::size_t n = 0;
  double h = 0.0;
  double probe = 0.0;
  double log_p = 0.0;
  double np = 0.0;
  bool feasible = false;  // n p_h >= 128
};

struct BernoulliScanPlan {
  double K = 0.0;
  double sigma = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double zeta = 0.0;
  std::vector<BernoulliScanRecord> records;
};

BernoulliScanPlan PlanBernoulliScan(double K, double sigma, double epsilon,
                                    const std::vector<std::size_t>& n_list);

struct BernoulliScanResult {
  BernoulliScanPlan plan;
  RateSeries w2;     // E[W2] over feasible points
  RateSeries w2_sq;  // E[W2^2] over feasible points
};

// ignore_guard runs infeasible points too; only for diagnostics.
BernoulliScanResult BernoulliScan(double K, double sigma, double epsilon,
                                  const std::vector<std::size_t>& n_list,
                                  const McOptions& opt, bool ignore_guard = false);

struct PhaseRow {
  double K = 0.0;
  std::string family;
  RateSeries series;  // E[W2^2]
  RateFit fit;
  bool fitted = false;
};

// family: "two_point" (fixed h) or "bernoulli_scan" (epsilon).
std::vector<PhaseRow> PhaseScan(const std::vector<double>& K_list, double sigma,
                                const std::string& family, double h_or_epsilon,
                                const std::vector<std::size_t>& n_list,
                                const McOptions& opt);

}  // namespace sot

#endif  // SOT_EXPERIMENTS_HPP_
