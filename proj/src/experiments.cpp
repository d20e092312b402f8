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

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "sot/common.hpp"
#include "sot/constructions.hpp"
#include "sot/divergences.hpp"
#include "sot/mixture.hpp"
#include "sot/parallel.hpp"
#include "sot/sampling.hpp"
#include "sot/transport.hpp"

namespace sot {
namespace {

constexpr std::uint64_t kStreamW2 = 0x7732;
constexpr std::uint64_t kStreamKl = 0x6b6c;

using TrialFn = std::function<double(const SmoothedMixture& pn, const SmoothedMixture& truth)>;

McEstimate RunTrials(const AtomicDistribution& p, double sigma, std::size_t n,
                     const McOptions& opt, std::uint64_t stream, const TrialFn& fn) {
  if (opt.trials < 2) throw InvalidArgument("trials must be at least 2");
  if (n == 0) throw InvalidArgument("n must be positive");
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  const SmoothedMixture truth(p, sigma);
  const std::uint64_t base = DeriveSeed(opt.seed, stream, n);
  const std::size_t batch = std::max<std::size_t>(2, opt.batch);
  const WorkerPool pool(WorkerPool::DefaultThreads());
  McEstimate out;
  out.per_trial.assign(opt.trials, 0.0);
  std::size_t done = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  while (done < opt.trials) {
    const std::size_t count = std::min(batch, opt.trials - done);
    pool.ForEach(count, [&](std::size_t j) {
      const std::size_t i = done + j;
      Rng rng(DeriveSeed(base, 0, i));
      const SmoothedMixture pn(SampleEmpiricalLaw(p, n, rng), sigma);
      try {
        out.per_trial[i] = fn(pn, truth);
      } catch (const NumericError& e) {
        throw NumericError("trial " + std::to_string(i) + ": " + e.what(), e.partial());
      }
    });
    for (std::size_t i = done; i < done + count; ++i) {
      sum += out.per_trial[i];
      sum_sq += out.per_trial[i] * out.per_trial[i];
    }
    done += count;
    if (opt.early_stop_rel > 0.0 && done >= 2) {
      const double m = sum / done;
      const double var = std::max(0.0, (sum_sq - done * m * m) / (done - 1));
      if (m > 0.0 && std::sqrt(var / done) < opt.early_stop_rel * m) break;
    }
  }
  out.per_trial.resize(done);
  out.trials = done;
  const double m = sum / done;
  double ss = 0.0;
  for (double v : out.per_trial) ss += (v - m) * (v - m);
  out.estimate = m;
  out.stderr_ = std::sqrt(ss / (done - 1) / done);
  return out;
}

McEstimate SqrtOf(McEstimate e) {
  double sum = 0.0;
  for (double& v : e.per_trial) {
    v = std::sqrt(std::max(v, 0.0));
    sum += v;
  }
  const double m = sum / e.trials;
  double ss = 0.0;
  for (double v : e.per_trial) ss += (v - m) * (v - m);
  e.estimate = m;
  e.stderr_ = std::sqrt(ss / (e.trials - 1) / e.trials);
  return e;
}

RatePoint ToPoint(std::size_t n, const McEstimate& e) {
  return {n, e.estimate, e.stderr_, e.trials};
}

}  // namespace

McEstimate McExpectedW2Sq(const AtomicDistribution& p, double sigma, std::size_t n,
                          const McOptions& opt) {
  TransportOptions t;
  t.tol = opt.tol;
  return RunTrials(p, sigma, n, opt, kStreamW2,
                   [&](const SmoothedMixture& pn, const SmoothedMixture& truth) {
                     return W2Squared(pn, truth, t).total;
                   });
}

McEstimate McExpectedW2(const AtomicDistribution& p, double sigma, std::size_t n,
                        const McOptions& opt) {
  return SqrtOf(McExpectedW2Sq(p, sigma, n, opt));
}

McEstimate McExpectedKl(const AtomicDistribution& p, double sigma, std::size_t n,
                        const McOptions& opt) {
  return RunTrials(p, sigma, n, opt, kStreamKl,
                   [&](const SmoothedMixture& pn, const SmoothedMixture& truth) {
                     return KlDivergence(pn, truth, opt.tol).value;
                   });
}

RateFit FitRate(const RateSeries& series) {
  const std::vector<RatePoint>& pts = series.points;
  if (pts.size() < 3) throw InvalidArgument("rate fit needs at least 3 points");
  std::string bad;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!(pts[i].estimate > 0.0)) bad += (bad.empty() ? "" : ",") + std::to_string(i);
  }
  if (!bad.empty()) throw InvalidArgument("nonpositive estimates at indices " + bad);
  RateFit fit;
  fit.weighted = std::all_of(pts.begin(), pts.end(),
                             [](const RatePoint& p) { return p.stderr_ > 0.0; });
  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (const RatePoint& p : pts) {
    const double w = fit.weighted ? std::pow(p.estimate / p.stderr_, 2) : 1.0;
    sw += w;
    sx += w * std::log(static_cast<double>(p.n));
    sy += w * std::log(p.estimate);
  }
  const double mx = sx / sw;
  const double my = sy / sw;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const RatePoint& p : pts) {
    const double w = fit.weighted ? std::pow(p.estimate / p.stderr_, 2) : 1.0;
    const double dx = std::log(static_cast<double>(p.n)) - mx;
    const double dy = std::log(p.estimate) - my;
    sxx += w * dx * dx;
    sxy += w * dx * dy;
    syy += w * dy * dy;
  }
  if (!(sxx > 0.0)) throw InvalidArgument("rate fit needs distinct n");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (const RatePoint& p : pts) {
    const double w = fit.weighted ? std::pow(p.estimate / p.stderr_, 2) : 1.0;
    const double e = std::log(p.estimate) - fit.intercept -
                     fit.slope * std::log(static_cast<double>(p.n));
    rss += w * e * e;
  }
  const double dof = static_cast<double>(pts.size()) - 2.0;
  fit.slope_stderr = std::sqrt(rss / dof / sxx);
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - rss / syy, 0.0, 1.0) : 1.0;
  return fit;
}

BernoulliScanPlan PlanBernoulliScan(double K, double sigma, double epsilon,
                                    const std::vector<std::size_t>& n_list) {
  if (!(K > sigma) || !(sigma > 0.0)) throw InvalidArgument("bernoulli scan needs K > sigma > 0");
  BernoulliScanPlan plan;
  plan.K = K;
  plan.sigma = sigma;
  plan.epsilon = epsilon;
  plan.delta = BernoulliDelta(K, sigma, epsilon);
  plan.zeta = BernoulliZeta(K, sigma);
  const double cap = std::min(0.5, 1.0 - 1.0 / (2.0 * K * K * plan.zeta));
  if (!(plan.delta < cap)) throw InvalidArgument("epsilon too large: delta exceeds its cap");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw InvalidArgument("n_list must increase");
    BernoulliScanRecord r;
    r.n = n_list[i];
    r.h = BernoulliH(K, sigma, plan.delta, static_cast<double>(r.n));
    r.probe = BernoulliProbe(r.h, K, sigma);
    r.log_p = BernoulliLogWeight(r.h, K);
    r.np = static_cast<double>(r.n) * std::exp(r.log_p);
    r.feasible = r.np >= 128.0;
    plan.records.push_back(r);
  }
  return plan;
}

BernoulliScanResult BernoulliScan(double K, double sigma, double epsilon,
                                  const std::vector<std::size_t>& n_list,
                                  const McOptions& opt, bool ignore_guard) {
  BernoulliScanResult out;
  out.plan = PlanBernoulliScan(K, sigma, epsilon, n_list);
  for (const BernoulliScanRecord& r : out.plan.records) {
    if (!r.feasible && !ignore_guard) continue;
    const McEstimate sq = McExpectedW2Sq(BernoulliTwoPoint(r.h, K), sigma, r.n, opt);
    out.w2_sq.points.push_back(ToPoint(r.n, sq));
    out.w2.points.push_back(ToPoint(r.n, SqrtOf(sq)));
  }
  return out;
}

std::vector<PhaseRow> PhaseScan(const std::vector<double>& K_list, double sigma,
                                const std::string& family, double h_or_epsilon,
                                const std::vector<std::size_t>& n_list,
                                const McOptions& opt) {
  if (family != "two_point" && family != "bernoulli_scan") {
    throw InvalidArgument("family must be two_point or bernoulli_scan");
  }
  std::vector<PhaseRow> rows;
  for (double K : K_list) {
    PhaseRow row;
    row.K = K;
    row.family = family;
    if (family == "two_point") {
      const AtomicDistribution p = BernoulliTwoPoint(h_or_epsilon, K);
      for (std::size_t n : n_list) row.series.points.push_back(ToPoint(n, McExpectedW2Sq(p, sigma, n, opt)));
    } else if (K > sigma) {
      row.series = BernoulliScan(K, sigma, h_or_epsilon, n_list, opt).w2_sq;
    }
    if (row.series.points.size() >= 3) {
      row.fit = FitRate(row.series);
      row.fitted = true;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace sot
