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

// Exact one-dimensional W2 between smoothed mixtures.

#ifndef SOT_TRANSPORT_HPP_
#define SOT_TRANSPORT_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "sot/distribution.hpp"
#include "sot/mixture.hpp"

namespace sot {

// The monotone map T(t) = F_B^{-1}(F_A(t)). The displacement T(t) - t is found
// from F_B(T) - F_B(t) = F_A(t) - F_B(t), with the right side taken from an
// explicit difference measure, so it keeps relative accuracy even when the two
// CDFs agree to many more digits than a double holds.
class QuantileCoupling {
 public:
  QuantileCoupling(const SmoothedMixture& a, const SmoothedMixture& b);
  QuantileCoupling(const SmoothedMixture& a, const SmoothedMixture& b,
                   MixtureDifference b_minus_a);

  double Displacement(double t) const;
  double Map(double t) const { return t + Displacement(t); }

  const SmoothedMixture& a() const { return a_; }
  const SmoothedMixture& b() const { return b_; }
  const MixtureDifference& difference() const { return diff_; }

 private:
  SmoothedMixture a_;
  SmoothedMixture b_;
  MixtureDifference diff_;
};

struct TransportOptions {
  double tol = 1e-10;
  double rel_tol = 1e-8;
  // Half-width of the integration window beyond the outermost atoms.
  double reach_sigmas = 38.0;
  bool keep_grid = false;
  std::vector<double> breakpoints;
};

struct TransportPoint {
  double t = 0.0;
  double rho_a = 0.0;
  double map = 0.0;
  double contribution = 0.0;
};

struct TransportEvaluation {
  std::vector<TransportPoint> grid;
  double total = 0.0;
  double tail_bound = 0.0;
  double quadrature_error = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t evaluations = 0;
};

// W2^2(A, B) = integral of rho_A(t) (T(t) - t)^2 dt. Throws NumericError when
// the quadrature does not converge.
TransportEvaluation W2Squared(const SmoothedMixture& a, const SmoothedMixture& b,
                              const TransportOptions& opt = {});
TransportEvaluation W2Squared(const SmoothedMixture& a, const SmoothedMixture& b,
                              const MixtureDifference& b_minus_a,
                              const TransportOptions& opt = {});

// If F_A(t) >= F_B(t + 2), returns P_B([t+1, t+2]), a lower bound on W2^2.
std::optional<double> W2CrossingLowerBound(const SmoothedMixture& a,
                                           const SmoothedMixture& b, double t);

struct DisplacementReport {
  double t = 0.0;
  double h = 0.0;
  double sup_cdf_gap = 0.0;    // L_h(t), grid value plus Lipschitz allowance
  double inf_density = 0.0;    // inf of rho_P, grid value minus allowance
  double delta = 0.0;          // L_h / inf rho
  bool premise = false;        // delta <= h
  double displacement = 0.0;   // |F_Q^{-1}(F_P(t)) - t|
  bool holds = true;
};

DisplacementReport DisplacementBoundCheck(const SmoothedMixture& p,
                                          const SmoothedMixture& q, double t,
                                          double h);

struct TruncationReport {
  std::size_t points = 0;
  std::size_t violations = 0;
  double max_ratio = 0.0;  // displacement / bound
  double first_violation = 0.0;
};

// Linear-in-|x| displacement bound for sigma = 1 smoothings of subgaussian
// laws. Throws InvalidArgument if a profile fails its tail inequality.
TruncationReport TruncationBoundCheck(const SubgaussianProfile& p_profile,
                                      const SubgaussianProfile& q_profile,
                                      const SmoothedMixture& p,
                                      const SmoothedMixture& q,
                                      const std::vector<double>& x_grid);
double TruncationBound(const SubgaussianProfile& p_profile,
                       const SubgaussianProfile& q_profile, double x);

struct DecompositionReport {
  std::size_t n = 0;
  double alpha = 0.0;
  double truncation_radius = 0.0;  // 2 K sqrt(2 log n)
  double density_level = 0.0;      // n^{-alpha}
  double total = 0.0;
  double outer = 0.0;              // |t| > truncation radius
  double low_density = 0.0;        // rho < n^{-alpha}, inside the radius
  double high_density = 0.0;       // rho >= n^{-alpha}, inside the radius
  std::size_t pointwise_checked = 0;
  std::size_t pointwise_violations = 0;
  double max_displacement_ratio = 0.0;  // |T - t| / (|F - F_n| / rho)
};

// Draws P_n, then splits the W2^2 integral by region. sigma must be 1.
DecompositionReport UpperBoundDecomposition(const SmoothedMixture& p, double K,
                                            std::size_t n, std::uint64_t seed);

}  // namespace sot

#endif  // SOT_TRANSPORT_HPP_
