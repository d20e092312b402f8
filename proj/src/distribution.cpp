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

#include "sot/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "sot/common.hpp"
#include "sot/gaussian.hpp"

namespace sot {

AtomicDistribution AtomicDistribution::FromAtoms(std::vector<Atom> atoms) {
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.x)) throw InvalidArgument("atom location must be finite");
    if (std::isnan(a.logw) || a.logw == kInf) {
      throw InvalidArgument("atom log-weight must be finite or -inf");
    }
  }
  std::erase_if(atoms, [](const Atom& a) { return a.logw == kNegInf; });
  if (atoms.empty()) throw InvalidArgument("distribution has no atoms");
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& a, const Atom& b) { return a.x < b.x; });
  AtomicDistribution out;
  for (const Atom& a : atoms) {
    if (!out.x_.empty() && out.x_.back() == a.x) {
      out.logw_.back() = LogAddExp(out.logw_.back(), a.logw);
    } else {
      out.x_.push_back(a.x);
      out.logw_.push_back(a.logw);
    }
  }
  const double total = LogSumExp(out.logw_);
  for (double& lw : out.logw_) lw -= total;
  return out;
}

AtomicDistribution AtomicDistribution::Dirac(double x) {
  return FromAtoms({{x, 0.0}});
}

AtomicDistribution AtomicDistribution::FromWeights(const std::vector<double>& x,
                                                   const std::vector<double>& w) {
  if (x.size() != w.size()) throw InvalidArgument("locations and weights differ in length");
  std::vector<Atom> atoms;
  atoms.reserve(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (w[k] < 0.0) throw InvalidArgument("negative weight");
    atoms.push_back({x[k], w[k] > 0.0 ? std::log(w[k]) : kNegInf});
  }
  return FromAtoms(std::move(atoms));
}

double AtomicDistribution::weight(std::size_t k) const { return std::exp(logw_[k]); }

std::vector<Atom> AtomicDistribution::atoms() const {
  std::vector<Atom> out(x_.size());
  for (std::size_t k = 0; k < x_.size(); ++k) out[k] = {x_[k], logw_[k]};
  return out;
}

double AtomicDistribution::max_abs_x() const {
  return std::max(std::fabs(x_.front()), std::fabs(x_.back()));
}

double AtomicDistribution::Mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < x_.size(); ++k) m += weight(k) * x_[k];
  return m;
}

double AtomicDistribution::LogUpperTail(double r) const {
  LogAccumulator acc;
  for (std::size_t k = 0; k < x_.size(); ++k) {
    if (x_[k] >= r) acc.Add(logw_[k]);
  }
  return acc.Result();
}

double AtomicDistribution::LogAbsTail(double r) const {
  LogAccumulator acc;
  for (std::size_t k = 0; k < x_.size(); ++k) {
    if (std::fabs(x_[k]) >= r) acc.Add(logw_[k]);
  }
  return acc.Result();
}

AtomicDistribution AtomicDistribution::Shifted(double c) const {
  AtomicDistribution out = *this;
  for (double& x : out.x_) x += c;
  return out;
}

AtomicDistribution AtomicDistribution::Scaled(double s) const {
  if (!(s > 0.0)) throw InvalidArgument("scale must be positive");
  AtomicDistribution out = *this;
  for (double& x : out.x_) x *= s;
  return out;
}

EmpiricalMeasure::EmpiricalMeasure(std::vector<double> samples)
    : samples_(std::move(samples)) {
  if (samples_.empty()) throw InvalidArgument("empirical measure needs n >= 1");
  std::sort(samples_.begin(), samples_.end());
}

AtomicDistribution EmpiricalMeasure::ToAtomic() const {
  std::vector<Atom> atoms;
  const double lw = -std::log(static_cast<double>(samples_.size()));
  std::size_t i = 0;
  while (i < samples_.size()) {
    std::size_t j = i;
    while (j < samples_.size() && samples_[j] == samples_[i]) ++j;
    atoms.push_back({samples_[i], lw + std::log(static_cast<double>(j - i))});
    i = j;
  }
  return AtomicDistribution::FromAtoms(std::move(atoms));
}

double FitTailConstant(const AtomicDistribution& p, double K) {
  double log_c = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double r = std::fabs(p.x(k));
    log_c = std::max(log_c, p.LogAbsTail(r) + r * r / (2.0 * K * K));
  }
  return std::exp(log_c);
}

double ProfileViolation(const AtomicDistribution& p,
                        const SubgaussianProfile& profile,
                        const std::vector<double>& r_grid) {
  const AtomicDistribution centered = p.Shifted(-profile.mean);
  for (double r : r_grid) {
    const double lhs = centered.LogAbsTail(r);
    const double rhs =
        std::log(profile.C) - r * r / (2.0 * profile.K * profile.K);
    if (lhs > rhs + 1e-12) return r;
  }
  return -1.0;
}

GaussianTailReport GaussianTailBoundCheck(const std::vector<double>& l_grid) {
  GaussianTailReport out;
  out.min_slack = kInf;
  out.max_slack = kNegInf;
  for (double l : l_grid) {
    if (!(l >= 0.0)) throw InvalidArgument("tail grid needs l >= 0");
    const double slack = std::exp(-0.5 * l * l) - NormSf(l);
    ++out.points;
    out.max_slack = std::max(out.max_slack, slack);
    out.min_slack = std::min(out.min_slack, slack);
    // Compare in log space so that deep-tail points are not decided by underflow.
    if (LogNormSf(l) > -0.5 * l * l && out.first_violation < 0.0) {
      out.first_violation = l;
      out.pass = false;
    }
  }
  return out;
}

}  // namespace sot
