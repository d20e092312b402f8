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

#include <algorithm>
#include <cmath>
#include <random>

#include "sot/common.hpp"
#include "sot/gaussian.hpp"
#include "sot/parallel.hpp"
#include "sot/sampling.hpp"

namespace sot {
namespace {

constexpr std::uint64_t kStreamConcentration = 0x636f6e63;
constexpr std::uint64_t kStreamBerryEsseen = 0x62657272;
constexpr std::uint64_t kStreamScheduleGap = 0x73636864;

double Weighted(double f, double fn, double n) {
  const double v = std::max(1.0 / n, std::min(f, 1.0 - f));
  return std::fabs(f - fn) / std::sqrt(v);
}

void FinishFrequency(FrequencyReport& r) {
  r.frequency = static_cast<double>(r.hits) / static_cast<double>(r.replications);
  const double se = std::sqrt(r.frequency * (1.0 - r.frequency) /
                              static_cast<double>(r.replications));
  r.band_lower = r.target - 3.0 * se;
  r.pass = r.frequency >= r.band_lower;
}

}  // namespace

double WeightedCdfStatistic(const std::function<double(double)>& cdf,
                            const std::function<double(double)>& quantile,
                            const std::vector<double>& sorted_sample) {
  const std::size_t n = sorted_sample.size();
  if (n == 0) throw InvalidArgument("empty sample");
  const double nd = static_cast<double>(n);
  const std::vector<double>& s = sorted_sample;
  double sup = 0.0;
  auto fn_at = [&](double t) {
    return static_cast<double>(std::upper_bound(s.begin(), s.end(), t) - s.begin()) / nd;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 < n && s[i + 1] == s[i]) continue;
    const double f = cdf(s[i]);
    const double after = fn_at(s[i]);
    const double before = static_cast<double>(std::lower_bound(s.begin(), s.end(), s[i]) - s.begin()) / nd;
    sup = std::max({sup, Weighted(f, after, nd), Weighted(f, before, nd)});
    if (i + 1 < n) {
      const double mid = 0.5 * (s[i] + s[i + 1]);
      sup = std::max(sup, Weighted(cdf(mid), after, nd));
    }
  }
  for (std::size_t k = 1; k < 2 * n; ++k) {
    const double t = quantile(static_cast<double>(k) / (2.0 * nd));
    sup = std::max(sup, Weighted(cdf(t), fn_at(t), nd));
  }
  return sup;
}

double WeightedCdfStatistic(const SmoothedMixture& f, const EmpiricalMeasure& sample) {
  return WeightedCdfStatistic([&](double t) { return f.Cdf(t); },
                              [&](double u) { return f.Quantile(u); }, sample.samples());
}

double WeightedCdfStatisticSmoothed(const SmoothedMixture& f, const SmoothedMixture& f_n,
                                    std::size_t n) {
  if (n == 0) throw InvalidArgument("n must be positive");
  const double nd = static_cast<double>(n);
  std::vector<double> grid = f_n.base().locations();
  const std::size_t m = grid.size();
  for (std::size_t i = 0; i + 1 < m; ++i) grid.push_back(0.5 * (grid[i] + grid[i + 1]));
  for (std::size_t k = 1; k < 2 * n; ++k) grid.push_back(f.Quantile(k / (2.0 * nd)));
  double sup = 0.0;
  for (double t : grid) sup = std::max(sup, Weighted(f.Cdf(t), f_n.Cdf(t), nd));
  return sup;
}

double WeightedCdfBound(std::size_t n, double delta) {
  const double nd = static_cast<double>(n);
  return 16.0 / std::sqrt(nd) * std::log(2.0 * nd / delta);
}

double PlainCdfBound(std::size_t n, double delta) {
  const double nd = static_cast<double>(n);
  return 8.0 / std::sqrt(nd) * std::log(nd / delta);
}

ConcentrationBatch RunConcentration(const SmoothedMixture& f, std::size_t n, double delta,
                                    std::size_t replications, std::uint64_t seed) {
  if (replications == 0) throw InvalidArgument("replications must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  ConcentrationBatch out;
  out.replications.resize(replications);
  const double bound = WeightedCdfBound(n, delta);
  WorkerPool(WorkerPool::DefaultThreads()).ForEach(replications, [&](std::size_t i) {
    const EmpiricalMeasure s = Sample(f, n, DeriveSeed(seed, kStreamConcentration, i));
    ConcentrationReport& r = out.replications[i];
    r.n = n;
    r.delta = delta;
    r.statistic = WeightedCdfStatistic(f, s);
    r.bound = bound;
    r.violated = r.statistic > bound;
  });
  std::size_t v = 0;
  for (const ConcentrationReport& r : out.replications) v += r.violated ? 1 : 0;
  out.violation_rate = static_cast<double>(v) / static_cast<double>(replications);
  return out;
}

FrequencyReport BerryEsseenEventFrequency(double h, double K, double sigma,
                                          std::uint64_t n, std::size_t replications,
                                          std::uint64_t seed) {
  if (replications == 0) throw InvalidArgument("replications must be positive");
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  FrequencyReport r;
  r.n = n;
  r.replications = replications;
  r.target = 1.0 / 16.0;
  r.log_p = BernoulliLogWeight(h, K);
  const double p = std::exp(r.log_p);
  if (!(p < 0.5)) throw InvalidArgument("p_h must be below 1/2");
  if (static_cast<double>(n) * p < 128.0) {
    r.diagnostic = "n p_h < 128";
    return r;
  }
  r.applicable = true;
  r.probe = BernoulliProbe(h, K, sigma);
  r.threshold = std::exp(-h * h / (4.0 * K * K)) / std::sqrt(18.0 * static_cast<double>(n));
  // F~_n - F = (p - N_h / n) (Phi(t / sigma) - Phi((t - h) / sigma)).
  const double spread = std::exp(LogNormInterval((r.probe - h) / sigma, r.probe / sigma));
  std::vector<char> hit(replications, 0);
  WorkerPool(WorkerPool::DefaultThreads()).ForEach(replications, [&](std::size_t i) {
    Rng rng(DeriveSeed(seed, kStreamBerryEsseen, i));
    std::binomial_distribution<std::uint64_t> bin(n, p);
    const double nh = static_cast<double>(bin(rng));
    const double gap = (p - nh / static_cast<double>(n)) * spread;
    hit[i] = gap >= r.threshold ? 1 : 0;
  });
  for (char c : hit) r.hits += c;
  FinishFrequency(r);
  return r;
}

FrequencyReport ScheduleGapDominance(const HardExampleSchedule& schedule,
                                     const AtomicDistribution& p, int k,
                                     std::size_t replications, std::uint64_t seed,
                                     std::uint64_t n_override) {
  if (replications == 0) throw InvalidArgument("replications must be positive");
  if (k < 1 || k > static_cast<int>(schedule.records.size())) {
    throw InvalidArgument("k outside the schedule");
  }
  const ScheduleRecord& rec = schedule.records[k - 1];
  FrequencyReport r;
  r.replications = replications;
  r.target = 1.0 / 64.0;
  r.probe = rec.t * rec.r;
  const double r_next = rec.r * rec.c;
  std::size_t next = p.size();
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (std::fabs(p.x(j) - r_next) <= 1e-9 * r_next) next = j;
  }
  if (next == p.size()) throw InvalidArgument("law has no atom at r_{k+1}");
  r.log_p = p.logw(next);
  if (n_override == 0 && rec.n_saturated) {
    r.diagnostic = "n_k overflows 64 bits";
    return r;
  }
  r.n = n_override != 0 ? n_override : rec.n;
  if (r.n == 0 || std::log(static_cast<double>(r.n)) + r.log_p < std::log(32768.0)) {
    r.diagnostic = "n p_{k+1} < 32768";
    return r;
  }
  r.applicable = true;
  const double nd = static_cast<double>(r.n);
  r.threshold = 0.5 * std::exp(0.5 * (r.log_p - std::log(nd)));
  const double sigma = schedule.sigma;
  std::vector<double> sf(p.size());
  std::vector<double> w(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    sf[j] = NormSf((r.probe - p.x(j)) / sigma);
    w[j] = std::exp(p.logw(j));
  }
  std::vector<char> hit(replications, 0);
  WorkerPool(WorkerPool::DefaultThreads()).ForEach(replications, [&](std::size_t i) {
    Rng rng(DeriveSeed(seed, kStreamScheduleGap, i));
    const std::vector<std::uint64_t> counts = MultinomialCounts(p, r.n, rng);
    // Both laws carry unit mass, so the CDF gap is a sum over survival terms.
    double gap = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      gap += (w[j] - static_cast<double>(counts[j]) / nd) * sf[j];
    }
    hit[i] = gap >= r.threshold ? 1 : 0;
  });
  for (char c : hit) r.hits += c;
  FinishFrequency(r);
  return r;
}

}  // namespace sot
