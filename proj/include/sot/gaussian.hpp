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

// Standard normal primitives that stay accurate deep in both tails.

#ifndef SOT_GAUSSIAN_HPP_
#define SOT_GAUSSIAN_HPP_

#include <span>

namespace sot {

inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;
inline constexpr double kLog2 = 0.69314718055994530942;

double NormCdf(double x);
double NormSf(double x);
double LogNormPdf(double x);
double LogNormCdf(double x);
double LogNormSf(double x);

// log(Phi(b) - Phi(a)) for a <= b; -inf when a == b.
double LogNormInterval(double a, double b);

// log(exp(a) + exp(b)) and friends.
double LogAddExp(double a, double b);
double LogSumExp(std::span<const double> v);
// log(exp(a) - exp(b)) for a >= b.
double LogSubExp(double a, double b);

// Closed-form tail moments: integral over [c, inf) of phi(z) (u + v z)^2 dz,
// returned as a log.
double LogGaussTailQuadratic(double c, double u, double v);

// A real number held as sign * exp(log_abs).
struct SignedLog {
  int sign = 0;
  double log_abs = -1.0 / 0.0;
  double value() const;
};

// Streaming log-sum-exp.
class LogAccumulator {
 public:
  void Add(double log_term);
  double Result() const;

 private:
  double max_ = -1.0 / 0.0;
  double scaled_ = 0.0;
};

// Accumulates signed terms in log space; cancellation happens once, at the end.
class SignedLogSum {
 public:
  void Add(int sign, double log_abs);
  SignedLog Result() const;

 private:
  LogAccumulator pos_;
  LogAccumulator neg_;
};

}  // namespace sot

#endif  // SOT_GAUSSIAN_HPP_
