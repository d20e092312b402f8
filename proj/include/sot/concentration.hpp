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

#ifndef SOT_CONCENTRATION_HPP_
#define SOT_CONCENTRATION_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sot/constructions.hpp"
#include "sot/distribution.hpp"
#include "sot/mixture.hpp"

namespace sot {

// sup_t |F(t) - F_n(t)| / sqrt(max(1/n, min(F, 1 - F))) over the jump points
// of the sample, midpoints between them and the anchors F^-1(k / 2n).
double WeightedCdfStatistic(const std::function<double(double)>& cdf,
                            const std::function<double(double)>& quantile,
                            const std::vector<double>& sorted_sample);
double WeightedCdfStatistic(const SmoothedMixture& f, const EmpiricalMeasure& sample);
// F_n is the CDF of the smoothed empirical mixture built from n points.
double WeightedCdfStatisticSmoothed(const SmoothedMixture& f,
                                    const SmoothedMixture& f_n, std::size_t n);

// 16 / sqrt(n) log(2n / delta).
double WeightedCdfBound(std::size_t n, double delta);
// 8 / sqrt(n) log(n / delta).
double PlainCdfBound(std::size_t n, double delta);

struct ConcentrationReport {
  std::size_t n = 0;
  double delta = 0.0;
  double statistic = 0.0;
  double bound = 0.0;
  bool violated = false;
};

struct ConcentrationBatch {
  std::vector<ConcentrationReport> replications;
  double violation_rate = 0.0;
};

// Plain samples of f, compared against the weighted bound.
ConcentrationBatch RunConcentration(const SmoothedMixture& f, std::size_t n,
                                    double delta, std::size_t replications,
                                    std::uint64_t seed);

struct FrequencyReport {
  bool applicable = false;
  std::string diagnostic;
  std::uint64_t n = 0;
  double log_p = 0.0;     // log p_h, or log p_{k+1}
  double probe = 0.0;
  double threshold = 0.0;
  std::size_t replications = 0;
  std::size_t hits = 0;
  double frequency = 0.0;
  double target = 0.0;
  double band_lower = 0.0;  // target - 3 sqrt(f (1 - f) / reps)
  bool pass = false;
};

// Frequency of F~_n(t) - F(t) >= exp(-h^2 / 4K^2) / sqrt(18 n) at
// t = h/2 + sigma^2 h / (2K^2) for the two-point law; target 1/16.
FrequencyReport BerryEsseenEventFrequency(double h, double K, double sigma,
                                          std::uint64_t n, std::size_t replications,
                                          std::uint64_t seed);

// Frequency of F~_n(t_k r_k) - F(t_k r_k) >= sqrt(p_{k+1} / n) / 2; target 1/64.
// n_override = 0 uses the schedule's n_k.
FrequencyReport ScheduleGapDominance(const HardExampleSchedule& schedule,
                                     const AtomicDistribution& p, int k,
                                     std::size_t replications, std::uint64_t seed,
                                     std::uint64_t n_override = 0);

}  // namespace sot

#endif  // SOT_CONCENTRATION_HPP_
