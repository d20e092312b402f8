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

#ifndef SOT_MIXTURE_HPP_
#define SOT_MIXTURE_HPP_

#include <vector>

#include "sot/distribution.hpp"
#include "sot/gaussian.hpp"

namespace sot {

// An atomic law convolved with N(0, sigma^2). All evaluations go through log
// space, so atoms with weights far below the double range are fine.
class SmoothedMixture {
 public:
  SmoothedMixture() = default;
  SmoothedMixture(AtomicDistribution base, double sigma);

  const AtomicDistribution& base() const { return base_; }
  double sigma() const { return sigma_; }

  double LogPdf(double t) const;
  double Pdf(double t) const;
  double LogCdf(double t) const;
  double LogSf(double t) const;
  double Cdf(double t) const;
  double Sf(double t) const;
  // log P(a < Y <= b).
  double LogIntervalMass(double a, double b) const;

  double Quantile(double u) const;
  // Inverse of LogCdf and of LogSf, for levels beyond double resolution of u.
  double QuantileFromLogCdf(double log_u) const;
  double QuantileFromLogSf(double log_s) const;

  double DensityBound() const;
  SmoothedMixture Scaled(double s) const;

 private:
  AtomicDistribution base_;
  double sigma_ = 1.0;
  double inv_two_var_ = 0.5;
  double log_norm_ = 0.0;
};

// One signed Gaussian component of a zero-mass signed measure.
struct SignedComponent {
  double x = 0.0;
  double sigma = 1.0;
  double log_abs = 0.0;
  int sign = 1;
};

// The signed measure B - A between two smoothed mixtures, kept as explicit
// components so that F_B - F_A and rho_B - rho_A are computed without the
// cancellation of subtracting two nearly equal totals.
class MixtureDifference {
 public:
  MixtureDifference() = default;
  static MixtureDifference Between(const SmoothedMixture& a,
                                   const SmoothedMixture& b);
  // Components must carry zero total mass.
  static MixtureDifference FromComponents(std::vector<SignedComponent> parts);

  bool empty() const { return parts_.empty(); }
  const std::vector<SignedComponent>& components() const { return parts_; }

  SignedLog Density(double t) const;
  // F_B(t) - F_A(t). The upper form sums survival functions instead of CDFs;
  // both are exact, the right one avoids a floor at rounding of the total.
  SignedLog Cdf(double t, bool upper_form) const;

 private:
  std::vector<SignedComponent> parts_;
};

}  // namespace sot

#endif  // SOT_MIXTURE_HPP_
