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

#include "sot/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sot/common.hpp"
#include "sot/gaussian.hpp"
#include "sot/tail_bounds.hpp"

namespace sot {
namespace {

// exp(-x) underflows to zero past this.
constexpr double kUnderflowExponent = 745.0;

// log(1 - exp(l)) for l < 0.
double Log1mExp(double l) {
  return l > -kLog2 ? std::log(-std::expm1(l)) : std::log1p(-std::exp(l));
}

AtomicDistribution WithRemainderAtZero(std::vector<Atom> atoms) {
  std::vector<double> lw;
  for (const Atom& a : atoms) lw.push_back(a.logw);
  const double lsum = LogSumExp(lw);
  if (!(lsum < 0.0)) {
    throw std::logic_error("construction weights leave no mass for the origin");
  }
  atoms.push_back({0.0, Log1mExp(lsum)});
  return AtomicDistribution::FromAtoms(std::move(atoms));
}

MgfReport MgfCheck(const AtomicDistribution& p, double K,
                   const std::vector<double>& alpha_grid, bool centered,
                   double log_prefactor) {
  MgfReport rep;
  rep.max_gap = kNegInf;
  const double mu = centered ? p.Mean() : 0.0;
  for (double a : alpha_grid) {
    LogAccumulator acc;
    for (std::size_t k = 0; k < p.size(); ++k) acc.Add(p.logw(k) + a * (p.x(k) - mu));
    const double g = acc.Result() - log_prefactor - 0.5 * K * K * a * a;
    ++rep.points;
    if (g > rep.max_gap) {
      rep.max_gap = g;
      rep.arg_alpha = a;
    }
  }
  rep.pass = rep.points == 0 || rep.max_gap <= 1e-9;
  return rep;
}

}  // namespace

double BernoulliLogWeight(double h, double K) { return -h * h / (2.0 * K * K); }

AtomicDistribution BernoulliTwoPoint(double h, double K) {
  if (!(h > 0.0) || !(K > 0.0)) throw InvalidArgument("bernoulli needs h > 0 and K > 0");
  const double lp = BernoulliLogWeight(h, K);
  if (!(lp < 0.0)) throw InvalidArgument("bernoulli weight must be below 1");
  return AtomicDistribution::FromAtoms({{0.0, Log1mExp(lp)}, {h, lp}});
}

double ChiSquareWeightConstant(double K) {
  const double e2 = std::exp(-1.0 / (2.0 * K * K));
  const double m2 = -std::expm1(-1.0 / (2.0 * K * K));
  const double m8 = -std::expm1(-1.0 / (8.0 * K * K));
  return std::min({1.0 / 24.0, m2 * m2 / (2.0 * e2), 0.5 * m8 * m2, 0.5 * m2});
}

double ChiSquareMinRatio(double K) {
  if (!(K > 1.0)) throw InvalidArgument("ratio bound needs K > 1");
  const double q = 0.5 - 1.0 / (2.0 * K * K);
  const double disc = std::sqrt(1.0 - q / (K * K));
  const double y_small = (1.0 - disc) / q;
  const double y_large = (1.0 + disc) / q;
  return std::max({2.0, y_large, 1.0 / y_small});
}

AtomicDistribution ChiSquareHardExample(double K, double c, int k_max) {
  if (!(K > 1.0)) throw InvalidArgument("chi-square example needs K > 1 (sigma = 1 units)");
  if (!(c > 2.0)) throw InvalidArgument("chi-square example needs c > 2");
  if (k_max < 0) throw InvalidArgument("k_max must be nonnegative");
  const double lc1 = std::log(ChiSquareWeightConstant(K));
  std::vector<Atom> atoms;
  double r = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    atoms.push_back({r, lc1 - r * r / (2.0 * K * K)});
    r *= c;
  }
  if (atoms.empty()) return AtomicDistribution::Dirac(0.0);
  return WithRemainderAtZero(std::move(atoms));
}

HardExample W2HardExample(double K, double sigma, int k_max) {
  if (!(sigma > 0.0) || !(K > sigma)) throw InvalidArgument("w2 example needs 0 < sigma < K");
  if (k_max < 1) throw InvalidArgument("k_max must be at least 1");
  HardExample out;
  HardExampleSchedule& s = out.schedule;
  s.K = K;
  s.sigma = sigma;
  s.kappa = sigma * sigma / (K * K);
  s.M = std::max({std::sqrt(2.0 / s.kappa), (s.kappa + 3.0) / (1.0 - s.kappa), 3.0});
  const double two_k2 = 2.0 * K * K;

  // Radii until the weights underflow, for the normalizing constant.
  std::vector<double> radii;
  std::vector<double> ratios;
  {
    double r = 1.0;
    double ck = s.M;
    for (int k = 1;; ++k) {
      radii.push_back(r);
      ratios.push_back(ck);
      if (r * r / two_k2 > kUnderflowExponent && k > k_max + 1) break;
      r *= ck;
      ck *= s.M;
    }
  }
  LogAccumulator mass;
  for (double r : radii) mass.Add(-r * r / two_k2);
  const double log_norm = std::log(std::sqrt(2.0 * M_PI) * K);
  // Largest C with sum_k p_k <= 1/2; p_k is linear in C.
  const double log_c = -kLog2 + log_norm - mass.Result();
  s.C = std::exp(log_c);

  std::vector<Atom> atoms;
  for (int k = 1; k <= k_max + 1; ++k) {
    const double r = radii[k - 1];
    atoms.push_back({r, log_c - log_norm - r * r / two_k2});
  }
  out.dist = WithRemainderAtZero(std::move(atoms));

  for (int k = 1; k <= k_max; ++k) {
    ScheduleRecord rec;
    rec.k = k;
    rec.c = ratios[k - 1];
    rec.r = radii[k - 1];
    rec.t = 0.5 * (rec.c + 1.0) * (1.0 + s.kappa);
    rec.log_p = log_c - log_norm - rec.r * rec.r / two_k2;
    rec.probe = rec.t * rec.r;
    s.records.push_back(rec);
  }
  s.log_cu = kNegInf;
  for (ScheduleRecord& rec : s.records) {
    rec.log_cu = IntervalProbBounds(s, out.dist, rec.k).log_cu;
    s.log_cu = std::max(s.log_cu, rec.log_cu);
  }
  const double s2 = sigma * sigma;
  const double log_max = std::log(static_cast<double>(std::numeric_limits<std::uint64_t>::max()));
  for (ScheduleRecord& rec : s.records) {
    const double e = rec.t * rec.t - rec.c * s.kappa - rec.c;
    rec.log_n = -std::log(4.0) - 2.0 * s.log_cu + e * (rec.r - 2.0) * (rec.r - 2.0) / s2 -
                rec.c * rec.c * rec.r * rec.r / two_k2;
    if (rec.log_n >= log_max) {
      rec.n = std::numeric_limits<std::uint64_t>::max();
      rec.n_saturated = true;
    } else if (rec.log_n < 0.0) {
      rec.n = 0;
    } else {
      rec.n = static_cast<std::uint64_t>(std::floor(std::exp(rec.log_n)));
    }
  }
  return out;
}

MgfReport MgfSubgaussianCheck(const AtomicDistribution& p, double K,
                              const std::vector<double>& alpha_grid) {
  return MgfCheck(p, K, alpha_grid, true, 0.0);
}

MgfReport MgfSubgaussianCheckWeak(const AtomicDistribution& p, double K,
                                  const std::vector<double>& alpha_grid) {
  return MgfCheck(p, K, alpha_grid, false, kLog2);
}

ExpSquareMoment ExpSquareMomentOf(const AtomicDistribution& p, double a) {
  std::vector<std::size_t> order(p.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return std::fabs(p.x(i)) < std::fabs(p.x(j));
  });
  ExpSquareMoment out;
  LogAccumulator acc;
  for (std::size_t k : order) {
    const double inc = p.logw(k) + a * p.x(k) * p.x(k);
    acc.Add(inc);
    out.log_increment.push_back(inc);
    out.log_partial.push_back(acc.Result());
  }
  out.log_value = acc.Result();
  out.overflow = out.log_value > std::log(std::numeric_limits<double>::max());
  return out;
}

double BernoulliZeta(double K, double sigma) {
  const double a = 0.5 + sigma * sigma / (2.0 * K * K);
  return a * a / (2.0 * sigma * sigma);
}

double BernoulliDelta(double K, double sigma, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  const double kap = sigma * sigma / (K * K);
  const double a = 1.0 + kap;
  const double rhs = a * a / (2.0 + 2.0 * kap) + 2.0 * epsilon;
  auto lhs = [&](double d) {
    return (1.0 + d) * a * a / (2.0 * (1.0 - d) * a - 4.0 * d * kap);
  };
  // The denominator vanishes at the pole; the left side increases up to it.
  double lo = 0.0;
  double hi = std::min(1.0, 2.0 * a / (2.0 * a + 4.0 * kap)) * (1.0 - 1e-15);
  if (!(lhs(hi) > rhs)) throw InvalidArgument("no delta solves the schedule equation");
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (lhs(mid) < rhs) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double BernoulliH(double K, double sigma, double delta, double n) {
  const double zeta = BernoulliZeta(K, sigma);
  const double denom = (1.0 - delta) * zeta - 1.0 / (4.0 * K * K);
  const double arg = std::log(12.0 * std::sqrt(n) / (std::sqrt(M_PI) * sigma));
  if (!(denom > 0.0) || !(arg > 0.0)) throw InvalidArgument("h schedule undefined here");
  return std::sqrt(arg / denom);
}

double BernoulliProbe(double h, double K, double sigma) {
  return 0.5 * h + sigma * sigma * h / (2.0 * K * K);
}

}  // namespace sot
