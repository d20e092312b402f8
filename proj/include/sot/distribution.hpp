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

#ifndef SOT_DISTRIBUTION_HPP_
#define SOT_DISTRIBUTION_HPP_

#include <cstddef>
#include <vector>

namespace sot {

struct Atom {
  double x = 0.0;
  double logw = 0.0;
};

// Finite discrete law on the line. Locations are strictly increasing and the
// log-weights are normalized so that their log-sum-exp is zero.
class AtomicDistribution {
 public:
  AtomicDistribution() = default;

  // Sorts, merges equal locations, drops -inf weights and renormalizes.
  static AtomicDistribution FromAtoms(std::vector<Atom> atoms);
  static AtomicDistribution Dirac(double x);
  // Locations with linear weights (need not be normalized).
  static AtomicDistribution FromWeights(const std::vector<double>& x,
                                        const std::vector<double>& w);

  std::size_t size() const { return x_.size(); }
  bool empty() const { return x_.empty(); }
  double x(std::size_t k) const { return x_[k]; }
  double logw(std::size_t k) const { return logw_[k]; }
  double weight(std::size_t k) const;
  const std::vector<double>& locations() const { return x_; }
  const std::vector<double>& log_weights() const { return logw_; }
  std::vector<Atom> atoms() const;

  double min_x() const { return x_.front(); }
  double max_x() const { return x_.back(); }
  double max_abs_x() const;
  double Mean() const;

  // log P(X >= r) and log P(|X| >= r).
  double LogUpperTail(double r) const;
  double LogAbsTail(double r) const;

  AtomicDistribution Shifted(double c) const;
  AtomicDistribution Scaled(double s) const;

 private:
  std::vector<double> x_;
  std::vector<double> logw_;
};

// Sorted i.i.d. sample.
class EmpiricalMeasure {
 public:
  EmpiricalMeasure() = default;
  explicit EmpiricalMeasure(std::vector<double> samples);

  std::size_t n() const { return samples_.size(); }
  const std::vector<double>& samples() const { return samples_; }
  // Uniform weights 1/n, duplicates merged.
  AtomicDistribution ToAtomic() const;

 private:
  std::vector<double> samples_;
};

// P(|X - mean| >= r) <= C exp(-r^2 / (2 K^2)).
struct SubgaussianProfile {
  double K = 1.0;
  double C = 1.0;
  double mean = 0.0;
};

// Smallest C >= 1 for which the profile inequality holds with mean 0 and
// scale K. For atoms the sup over r is attained at |x_k|.
double FitTailConstant(const AtomicDistribution& p, double K);

// Checks the profile inequality on a grid of radii; returns the first
// violating r, or a negative value when none.
double ProfileViolation(const AtomicDistribution& p,
                        const SubgaussianProfile& profile,
                        const std::vector<double>& r_grid);

struct GaussianTailReport {
  std::size_t points = 0;
  double max_slack = 0.0;  // max of exp(-l^2/2) - (1 - Phi(l))
  double min_slack = 0.0;
  double first_violation = -1.0;
  bool pass = true;
};

// Checks 1 - Phi(l) <= exp(-l^2/2) at every grid point.
GaussianTailReport GaussianTailBoundCheck(const std::vector<double>& l_grid);

}  // namespace sot

#endif  // SOT_DISTRIBUTION_HPP_
