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

// f-divergences between smoothed mixtures and the mutual informations of the
// Gaussian channel Y = S + sigma Z.

#ifndef SOT_DIVERGENCES_HPP_
#define SOT_DIVERGENCES_HPP_

#include <vector>

#include "sot/distribution.hpp"
#include "sot/mixture.hpp"

namespace sot {

struct Divergence {
  // +inf for chi2 and Renyi when the tails make the integral diverge.
  double value = 0.0;
  double quadrature_error = 0.0;
  // Bound on the integrand mass outside the window; +inf when the tails of
  // the two mixtures do not admit a finite bound.
  double tail_bound = 0.0;
};

// Integrands are written as nonnegative excesses, e.g. rho_A (r - log1p r)
// with r = rho_B / rho_A - 1, so nearly equal arguments keep full relative
// accuracy.
Divergence KlDivergence(const SmoothedMixture& a, const SmoothedMixture& b,
                        double tol = 1e-10);
// With the signed difference rho_B - rho_A supplied exactly, for laws whose
// weights differ below the rounding of the weights themselves.
Divergence KlDivergence(const SmoothedMixture& a, const SmoothedMixture& b,
                        const MixtureDifference& b_minus_a, double tol = 1e-10);
Divergence Chi2Divergence(const SmoothedMixture& a, const SmoothedMixture& b,
                          double tol = 1e-10);
// 1 < lambda <= 2.
Divergence RenyiDivergence(const SmoothedMixture& a, const SmoothedMixture& b,
                           double lambda, double tol = 1e-10);

struct MIEstimate {
  double value = 0.0;
  double truncation_radius = 0.0;
  std::vector<double> partial_by_atom;  // in the atom order of the base law
  double quadrature_error = 0.0;
};

// max |atom| + sigma sqrt(2 log(1/tol)) + 10 sigma.
double DefaultTruncationRadius(const AtomicDistribution& p, double sigma,
                               double tol);

// I_chi2 over |y| <= R, written as sum_k w_k int (phi_k - rho)^2 / rho, so
// both the total and each atom's share are nonnegative and grow with R.
MIEstimate Chi2MutualInformation(const AtomicDistribution& p, double sigma,
                                 double truncation_radius, double tol = 1e-10);
// 1 < lambda < 2.
MIEstimate RenyiMutualInformation(const AtomicDistribution& p, double sigma,
                                  double lambda, double truncation_radius,
                                  double tol = 1e-10);

// (1 / (lambda - 1)) log(1 + exp((lambda - 1)(I - log n))).
double SoftCoveringKlBound(double i_lambda, double lambda, double n);

}  // namespace sot

#endif  // SOT_DIVERGENCES_HPP_
