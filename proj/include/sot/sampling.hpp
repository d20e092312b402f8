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

#ifndef SOT_SAMPLING_HPP_
#define SOT_SAMPLING_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "sot/distribution.hpp"
#include "sot/mixture.hpp"

namespace sot {

using Rng = std::mt19937_64;

// Counter-based seed derivation (splitmix64 finalizer over the triple).
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t stream,
                         std::uint64_t index);

// Multinomial(n, weights) through sequential conditional binomials.
std::vector<std::uint64_t> MultinomialCounts(const AtomicDistribution& p,
                                             std::uint64_t n, Rng& rng);

// The empirical law of n draws from p, built from counts. Cost is O(atoms).
AtomicDistribution SampleEmpiricalLaw(const AtomicDistribution& p,
                                      std::uint64_t n, Rng& rng);

EmpiricalMeasure Sample(const AtomicDistribution& p, std::size_t n,
                        std::uint64_t seed);
EmpiricalMeasure Sample(const SmoothedMixture& m, std::size_t n,
                        std::uint64_t seed);

// Fills out[0..n) with draws from m, unsorted.
void DrawSmoothed(const SmoothedMixture& m, Rng& rng, std::vector<double>& out);

}  // namespace sot

#endif  // SOT_SAMPLING_HPP_
