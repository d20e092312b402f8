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

#include "sot/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include "sot/common.hpp"

namespace sot {
namespace {

constexpr double kSqrt1_2 = 0.70710678118654752440;
constexpr double kLogSqrtPi = 0.57236494292470008707;

// 16-point Gauss-Legendre on [-1, 1], positive half.
constexpr double kGLNode[8] = {
    0.0950125098376374401853, 0.2816035507792589132305,
    0.4580167776572273863424, 0.6178762444026437484467,
    0.7554044083550030338951, 0.8656312023878317438805,
    0.9445750230732325760779, 0.9894009349916499325962};
constexpr double kGLWeight[8] = {
    0.1894506104550684962854, 0.1826034150449235888668,
    0.1691565193950025381893, 0.1495959888165767320815,
    0.1246289712555338720525, 0.0951585116824927848099,
    0.0622535239386478928628, 0.0271524594117540948518};

// log(erfc(z)) for large z via the asymptotic series of erfcx.
double LogErfcAsymptotic(double z) {
  const double inv = 1.0 / (2.0 * z * z);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 12; ++k) {
    term *= -(2.0 * k - 1.0) * inv;
    sum += term;
  }
  return -z * z - std::log(z) - kLogSqrtPi + std::log(sum);
}

double LogIntervalNarrow(double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  LogAccumulator acc;
  for (int i = 0; i < 8; ++i) {
    for (int s = -1; s <= 1; s += 2) {
      const double z = mid + s * half * kGLNode[i];
      acc.Add(std::log(kGLWeight[i]) - 0.5 * z * z);
    }
  }
  return acc.Result() + std::log(half) - kLogSqrt2Pi;
}

}  // namespace

double NormCdf(double x) { return 0.5 * std::erfc(-x * kSqrt1_2); }

double NormSf(double x) { return 0.5 * std::erfc(x * kSqrt1_2); }

double LogNormPdf(double x) { return -0.5 * x * x - kLogSqrt2Pi; }

double LogNormCdf(double x) {
  if (std::isnan(x)) return x;
  if (x == kInf) return 0.0;
  if (x == kNegInf) return kNegInf;
  if (x > 5.0) return std::log1p(-NormSf(x));
  const double z = -x * kSqrt1_2;
  if (z < 25.0) return std::log(0.5 * std::erfc(z));
  return -kLog2 + LogErfcAsymptotic(z);
}

double LogNormSf(double x) { return LogNormCdf(-x); }

double LogNormInterval(double a, double b) {
  if (!(a < b)) return kNegInf;
  if (a == kNegInf) return LogNormCdf(b);
  if (b == kInf) return LogNormSf(a);
  const double reach = 1.0 + std::max(std::fabs(a), std::fabs(b));
  if ((b - a) * reach < 0.5) return LogIntervalNarrow(a, b);
  if (a >= 0.0) {
    const double la = LogNormSf(a);
    return la + std::log(-std::expm1(LogNormSf(b) - la));
  }
  if (b <= 0.0) {
    const double lb = LogNormCdf(b);
    return lb + std::log(-std::expm1(LogNormCdf(a) - lb));
  }
  return std::log1p(-(NormCdf(a) + NormSf(b)));
}

double LogAddExp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::fabs(a - b)));
}

double LogSumExp(std::span<const double> v) {
  LogAccumulator acc;
  for (double x : v) acc.Add(x);
  return acc.Result();
}

double LogSubExp(double a, double b) {
  if (b == kNegInf) return a;
  if (b >= a) return kNegInf;
  return a + std::log(-std::expm1(b - a));
}

double LogGaussTailQuadratic(double c, double u, double v) {
  c = std::max(c, 0.0);
  u = std::fabs(u);
  v = std::fabs(v);
  const double ls = LogNormSf(c);
  const double lp = LogNormPdf(c);
  LogAccumulator acc;
  if (u > 0.0) {
    acc.Add(2.0 * std::log(u) + ls);
    if (v > 0.0) acc.Add(kLog2 + std::log(u) + std::log(v) + lp);
  }
  if (v > 0.0) {
    acc.Add(2.0 * std::log(v) + ls);
    if (c > 0.0) acc.Add(2.0 * std::log(v) + std::log(c) + lp);
  }
  return acc.Result();
}

double SignedLog::value() const {
  return sign == 0 ? 0.0 : sign * std::exp(log_abs);
}

void LogAccumulator::Add(double log_term) {
  if (log_term == kNegInf || std::isnan(log_term)) return;
  if (log_term <= max_) {
    scaled_ += std::exp(log_term - max_);
  } else {
    scaled_ = scaled_ * std::exp(max_ - log_term) + 1.0;
    max_ = log_term;
  }
}

double LogAccumulator::Result() const {
  if (max_ == kNegInf) return kNegInf;
  return max_ + std::log(scaled_);
}

void SignedLogSum::Add(int sign, double log_abs) {
  if (sign > 0) {
    pos_.Add(log_abs);
  } else if (sign < 0) {
    neg_.Add(log_abs);
  }
}

SignedLog SignedLogSum::Result() const {
  const double p = pos_.Result();
  const double n = neg_.Result();
  if (p == n) return {};
  if (p > n) return {1, LogSubExp(p, n)};
  return {-1, LogSubExp(n, p)};
}

}  // namespace sot
