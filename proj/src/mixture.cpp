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

#include "sot/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sot/common.hpp"
#include "sot/simd/kernels.hpp"

namespace sot {
namespace {

constexpr double kBracketHalfWidth = 40.0;

// Safeguarded Newton on an increasing function g with derivative dg.
template <typename G, typename DG>
double SolveIncreasing(G g, DG dg, double lo, double hi) {
  double glo = g(lo);
  while (glo > 0.0) {
    const double w = hi - lo;
    hi = lo;
    lo -= 2.0 * w;
    glo = g(lo);
  }
  double ghi = g(hi);
  while (ghi < 0.0) {
    const double w = hi - lo;
    lo = hi;
    hi += 2.0 * w;
    ghi = g(hi);
  }
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double gt = g(t);
    if (gt == 0.0 || std::fabs(gt) <= 1e-14) return t;
    if (gt < 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    const double width_tol =
        std::max(1e-12, 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(t));
    if (hi - lo <= width_tol) return 0.5 * (lo + hi);
    const double d = dg(t);
    double next = (d > 0.0 && std::isfinite(d)) ? t - gt / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    t = next;
  }
  return t;
}

}  // namespace

SmoothedMixture::SmoothedMixture(AtomicDistribution base, double sigma)
    : base_(std::move(base)), sigma_(sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("sigma must be positive and finite");
  }
  if (base_.empty()) throw InvalidArgument("mixture base is empty");
  inv_two_var_ = 1.0 / (2.0 * sigma * sigma);
  log_norm_ = kLogSqrt2Pi + std::log(sigma);
}

double SmoothedMixture::LogPdf(double t) const {
  return simd::LogSumExpGauss(base_.locations().data(),
                              base_.log_weights().data(), base_.size(), t,
                              inv_two_var_) -
         log_norm_;
}

double SmoothedMixture::Pdf(double t) const { return std::exp(LogPdf(t)); }

double SmoothedMixture::LogCdf(double t) const {
  LogAccumulator acc;
  for (std::size_t k = 0; k < base_.size(); ++k) {
    acc.Add(base_.logw(k) + LogNormCdf((t - base_.x(k)) / sigma_));
  }
  return acc.Result();
}

double SmoothedMixture::LogSf(double t) const {
  LogAccumulator acc;
  for (std::size_t k = 0; k < base_.size(); ++k) {
    acc.Add(base_.logw(k) + LogNormSf((t - base_.x(k)) / sigma_));
  }
  return acc.Result();
}

double SmoothedMixture::Cdf(double t) const {
  const double lc = LogCdf(t);
  if (lc < -kLog2) return std::exp(lc);
  return -std::expm1(LogSf(t));
}

double SmoothedMixture::Sf(double t) const {
  const double ls = LogSf(t);
  if (ls < -kLog2) return std::exp(ls);
  return -std::expm1(LogCdf(t));
}

double SmoothedMixture::LogIntervalMass(double a, double b) const {
  if (!(a < b)) return kNegInf;
  LogAccumulator acc;
  for (std::size_t k = 0; k < base_.size(); ++k) {
    acc.Add(base_.logw(k) +
            LogNormInterval((a - base_.x(k)) / sigma_, (b - base_.x(k)) / sigma_));
  }
  return acc.Result();
}

double SmoothedMixture::Quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw InvalidArgument("quantile level must lie in (0, 1)");
  if (u <= 0.5) return QuantileFromLogCdf(std::log(u));
  return QuantileFromLogSf(std::log1p(-u));
}

double SmoothedMixture::QuantileFromLogCdf(double log_u) const {
  const double lo = base_.min_x() - kBracketHalfWidth * sigma_;
  const double hi = base_.max_x() + kBracketHalfWidth * sigma_;
  return SolveIncreasing(
      [&](double t) { return LogCdf(t) - log_u; },
      [&](double t) { return std::exp(LogPdf(t) - LogCdf(t)); }, lo, hi);
}

double SmoothedMixture::QuantileFromLogSf(double log_s) const {
  const double lo = base_.min_x() - kBracketHalfWidth * sigma_;
  const double hi = base_.max_x() + kBracketHalfWidth * sigma_;
  return SolveIncreasing(
      [&](double t) { return log_s - LogSf(t); },
      [&](double t) { return std::exp(LogPdf(t) - LogSf(t)); }, lo, hi);
}

double SmoothedMixture::DensityBound() const { return std::exp(-log_norm_); }

SmoothedMixture SmoothedMixture::Scaled(double s) const {
  return SmoothedMixture(base_.Scaled(s), sigma_ * s);
}

MixtureDifference MixtureDifference::Between(const SmoothedMixture& a,
                                             const SmoothedMixture& b) {
  std::vector<SignedComponent> parts;
  const AtomicDistribution& pa = a.base();
  const AtomicDistribution& pb = b.base();
  if (a.sigma() != b.sigma()) {
    for (std::size_t k = 0; k < pb.size(); ++k) {
      parts.push_back({pb.x(k), b.sigma(), pb.logw(k), 1});
    }
    for (std::size_t k = 0; k < pa.size(); ++k) {
      parts.push_back({pa.x(k), a.sigma(), pa.logw(k), -1});
    }
    return FromComponents(std::move(parts));
  }
  const double s = a.sigma();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < pa.size() || j < pb.size()) {
    if (j == pb.size() || (i < pa.size() && pa.x(i) < pb.x(j))) {
      parts.push_back({pa.x(i), s, pa.logw(i), -1});
      ++i;
    } else if (i == pa.size() || pb.x(j) < pa.x(i)) {
      parts.push_back({pb.x(j), s, pb.logw(j), 1});
      ++j;
    } else {
      const double la = pa.logw(i);
      const double lb = pb.logw(j);
      if (lb > la) {
        parts.push_back({pa.x(i), s, LogSubExp(lb, la), 1});
      } else if (la > lb) {
        parts.push_back({pa.x(i), s, LogSubExp(la, lb), -1});
      }
      ++i;
      ++j;
    }
  }
  return FromComponents(std::move(parts));
}

MixtureDifference MixtureDifference::FromComponents(
    std::vector<SignedComponent> parts) {
  MixtureDifference out;
  for (const SignedComponent& c : parts) {
    if (c.sign != 0 && c.log_abs > kNegInf) out.parts_.push_back(c);
  }
  return out;
}

SignedLog MixtureDifference::Density(double t) const {
  SignedLogSum sum;
  for (const SignedComponent& c : parts_) {
    const double z = (t - c.x) / c.sigma;
    sum.Add(c.sign, c.log_abs + LogNormPdf(z) - std::log(c.sigma));
  }
  return sum.Result();
}

SignedLog MixtureDifference::Cdf(double t, bool upper_form) const {
  SignedLogSum sum;
  for (const SignedComponent& c : parts_) {
    const double z = (t - c.x) / c.sigma;
    if (upper_form) {
      sum.Add(-c.sign, c.log_abs + LogNormSf(z));
    } else {
      sum.Add(c.sign, c.log_abs + LogNormCdf(z));
    }
  }
  return sum.Result();
}

}  // namespace sot
