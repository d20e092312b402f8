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

// Test-function lower bounds on the log-Sobolev and T2 constants of the
// smoothed two-point law mu_h = P_h * N(0, sigma^2).

#ifndef SOT_FUNCTIONAL_INEQ_HPP_
#define SOT_FUNCTIONAL_INEQ_HPP_

#include "sot/common.hpp"

namespace sot {

struct LSIProbe {
  double h = 0.0;
  double sigma = 0.0;
  double K = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  // mu_h of (-inf, x1], (x1, x1+1], (x1+1, x2], (x2, x2+1], (x2+1, inf).
  double q[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
  double log_ratio = 0.0;  // log(q3 (q1 + q5) / (q2 + q4))
  double lsi_lower = 0.0;  // max(ratio - 1, 0)
  // Bound with x1 moved to -80 sigma minus the bound at x1; only filled when
  // x1 is the default.
  double sensitivity = 0.0;
};

// Pass NaN for x1 / x2 to get -40 sigma and h sqrt(sigma / K).
LSIProbe LsiLowerBound(double h, double K, double sigma, double x1 = kNaN,
                       double x2 = kNaN);

struct T2Probe {
  double h = 0.0;
  double delta = 0.0;
  double log_p_h = 0.0;
  double log_perturbation = 0.0;  // log(p_h - q_h)
  double q_h = 0.0;
  double w2sq = 0.0;
  double kl = 0.0;
  double kl_discrete = 0.0;  // KL between the unsmoothed two-point laws
  double ratio = 0.0;        // w2sq / kl
};

T2Probe T2LowerBound(double h, double K, double sigma, double delta);

}  // namespace sot

#endif  // SOT_FUNCTIONAL_INEQ_HPP_
