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

#include "sot/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "sot/common.hpp"

namespace sot {
namespace {

std::uint64_t SplitMix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t stream,
                         std::uint64_t index) {
  return SplitMix(SplitMix(SplitMix(base) ^ stream) ^ index);
}

std::vector<std::uint64_t> MultinomialCounts(const AtomicDistribution& p,
                                             std::uint64_t n, Rng& rng) {
  const std::size_t m = p.size();
  // Suffix masses relative to the heaviest atom, summed from the light end.
  double lmax = p.logw(0);
  for (std::size_t k = 1; k < m; ++k) lmax = std::max(lmax, p.logw(k));
  std::vector<double> w(m);
  std::vector<double> suffix(m + 1, 0.0);
  for (std::size_t k = 0; k < m; ++k) w[k] = std::exp(p.logw(k) - lmax);
  for (std::size_t k = m; k-- > 0;) suffix[k] = suffix[k + 1] + w[k];
  std::vector<std::uint64_t> counts(m, 0);
  std::uint64_t left = n;
  for (std::size_t k = 0; k + 1 < m && left > 0; ++k) {
    const double q = std::clamp(w[k] / suffix[k], 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> bin(left, q);
    counts[k] = bin(rng);
    left -= counts[k];
  }
  counts[m - 1] += left;
  return counts;
}

AtomicDistribution SampleEmpiricalLaw(const AtomicDistribution& p,
                                      std::uint64_t n, Rng& rng) {
  if (n == 0) throw InvalidArgument("sample size must be positive");
  const std::vector<std::uint64_t> counts = MultinomialCounts(p, n, rng);
  std::vector<double> x;
  std::vector<double> w;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (counts[k] == 0) continue;
    x.push_back(p.x(k));
    w.push_back(static_cast<double>(counts[k]));
  }
  return AtomicDistribution::FromWeights(x, w);
}

EmpiricalMeasure Sample(const AtomicDistribution& p, std::size_t n,
                        std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sample size must be positive");
  Rng rng(seed);
  const std::vector<std::uint64_t> counts = MultinomialCounts(p, n, rng);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t k = 0; k < p.size(); ++k) out.insert(out.end(), counts[k], p.x(k));
  return EmpiricalMeasure(std::move(out));
}

void DrawSmoothed(const SmoothedMixture& m, Rng& rng, std::vector<double>& out) {
  const std::vector<std::uint64_t> counts =
      MultinomialCounts(m.base(), out.size(), rng);
  std::normal_distribution<double> noise(0.0, m.sigma());
  std::size_t i = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    for (std::uint64_t c = 0; c < counts[k]; ++c) out[i++] = m.base().x(k) + noise(rng);
  }
}

EmpiricalMeasure Sample(const SmoothedMixture& m, std::size_t n,
                        std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sample size must be positive");
  Rng rng(seed);
  std::vector<double> out(n);
  DrawSmoothed(m, rng, out);
  return EmpiricalMeasure(std::move(out));
}

}  // namespace sot
