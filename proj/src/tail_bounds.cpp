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

#include "sot/tail_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "sot/gaussian.hpp"

namespace sot {

double BetaExponent(double K) {
  if (!(K > 0.0)) throw InvalidArgument("K must be positive");
  const double a = 1.0 + K * K;
  return 4.0 * K * K / (a * a);
}

double AlphaExponent(double K, double sigma) {
  if (!(K > 0.0) || !(sigma > 0.0)) throw InvalidArgument("K and sigma must be positive");
  const double s2 = sigma * sigma;
  const double k2 = K * K;
  return (s2 + k2) * (s2 + k2) / (4.0 * (s2 * s2 + k2 * k2));
}

TailDensityReport TailDensityInequalityProbe(const SmoothedMixture& m, double K,
                                             double epsilon,
                                             const std::vector<double>& r_grid) {
  if (m.sigma() != 1.0) throw InvalidArgument("tail probe needs sigma = 1");
  TailDensityReport rep;
  rep.beta = BetaExponent(K);
  if (!(epsilon > 0.0 && epsilon < rep.beta)) {
    throw InvalidArgument("epsilon must lie in (0, beta)");
  }
  rep.exponent = rep.beta - epsilon;
  for (double r : r_grid) {
    if (r < 0.0) throw InvalidArgument("r grid must be nonnegative");
    for (int side = 0; side < 2; ++side) {
      TailDensityPoint pt;
      pt.r = side == 0 ? r : -r;
      pt.log_tail = side == 0 ? m.LogSf(r) : m.LogCdf(-r);
      pt.log_density = m.LogPdf(pt.r);
      pt.log_ratio = pt.log_tail - rep.exponent * pt.log_density;
      pt.tightness = pt.log_tail / pt.log_density;
      rep.log_m_hat = std::max(rep.log_m_hat, pt.log_ratio);
      (side == 0 ? rep.points : rep.mirrored).push_back(pt);
    }
  }
  rep.m_hat = std::exp(rep.log_m_hat);
  return rep;
}

DensityTailLowerReport DensityTailLowerProbe(const SmoothedMixture& m, double K,
                                             double epsilon,
                                             const std::vector<double>& r_grid) {
  if (m.sigma() != 1.0) throw InvalidArgument("tail probe needs sigma = 1");
  const double beta = BetaExponent(K);
  if (!(epsilon > 0.0 && epsilon < beta)) {
    throw InvalidArgument("epsilon must lie in (0, beta)");
  }
  DensityTailLowerReport rep;
  rep.exponent = 1.0 / (beta - epsilon);
  rep.log_c_hat = kInf;
  rep.log_c_last_decade = kInf;
  const std::size_t n = r_grid.size();
  const std::size_t last_start = n - std::max<std::size_t>(1, n / 10);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = r_grid[i];
    if (r < 0.0) throw InvalidArgument("r grid must be nonnegative");
    const double lt = m.base().LogUpperTail(r);
    const double lr = lt == kNegInf ? kInf : m.LogPdf(r) - rep.exponent * lt;
    rep.log_ratio.push_back(lr);
    rep.log_c_hat = std::min(rep.log_c_hat, lr);
    if (i >= last_start) {
      rep.log_c_last_decade = std::min(rep.log_c_last_decade, lr);
    }
  }
  rep.pass = rep.log_c_hat > kNegInf && !std::isnan(rep.log_c_hat);
  return rep;
}

double ExplicitUpperConstant(double K, double sigma) {
  const double q = std::exp(-1.0 / (2.0 * K * K));
  const double a = 2.0 * std::sqrt(2.0 * K * K * M_PI) * std::exp(1.0 / (2.0 * K * K)) /
                   (M_PI * sigma * K);
  const double c1 = 2.0 / (std::sqrt(2.0 * M_PI) * sigma);
  const double c2 = a / (1.0 - q);
  const double c3 = a * q / (1.0 - q);
  const double c4 = a;
  return c1 + c2 + c3 + c4;
}

IntervalBounds IntervalProbBounds(const HardExampleSchedule& schedule,
                                  const AtomicDistribution& p, int k) {
  if (k < 1 || k > static_cast<int>(schedule.records.size())) {
    throw InvalidArgument("k outside the schedule");
  }
  const ScheduleRecord& rec = schedule.records[k - 1];
  const double kap = schedule.kappa;
  if (rec.c < std::max(std::sqrt(2.0 / kap), (kap + 3.0) / (1.0 - kap))) {
    throw InvalidArgument("c_k below the schedule constraint");
  }
  const double sigma = schedule.sigma;
  const SmoothedMixture m(p, sigma);
  IntervalBounds out;
  out.k = k;
  const double tr = rec.t * rec.r;
  out.log_prob_lower_interval = m.LogIntervalMass(tr + 1.0, tr + 2.0);
  out.log_prob_upper_interval = m.LogIntervalMass(tr, tr + 2.0);
  const double e = rec.t * rec.t - kap * rec.c - rec.c;
  const double s2 = 2.0 * sigma * sigma;
  out.lower_exponent = -e * (rec.r + 2.0) * (rec.r + 2.0) / s2;
  out.upper_exponent = -e * (rec.r - 2.0) * (rec.r - 2.0) / s2;
  out.log_cl = out.log_prob_lower_interval - out.lower_exponent;
  out.log_cu = out.log_prob_upper_interval - out.upper_exponent;
  out.log_cl_paper = -std::log(2.0 * M_PI * sigma * schedule.K);
  out.cl_holds = out.log_cl >= out.log_cl_paper - 1e-12;
  return out;
}

}  // namespace sot
