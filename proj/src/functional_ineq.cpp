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

#include "sot/functional_ineq.hpp"

#include <cmath>

#include "sot/constructions.hpp"
#include "sot/divergences.hpp"
#include "sot/gaussian.hpp"
#include "sot/mixture.hpp"
#include "sot/transport.hpp"

namespace sot {
namespace {

LSIProbe Evaluate(double h, double K, double sigma, double x1, double x2) {
  if (!(x1 < -1.0) || !(x2 > 0.0) || !(x2 < h - 1.0)) {
    throw InvalidArgument("need x1 < -1 < 0 < x2 < h - 1");
  }
  const SmoothedMixture mu(BernoulliTwoPoint(h, K), sigma);
  LSIProbe out;
  out.h = h;
  out.sigma = sigma;
  out.K = K;
  out.x1 = x1;
  out.x2 = x2;
  const double lq[5] = {mu.LogCdf(x1), mu.LogIntervalMass(x1, x1 + 1.0),
                        mu.LogIntervalMass(x1 + 1.0, x2), mu.LogIntervalMass(x2, x2 + 1.0),
                        mu.LogSf(x2 + 1.0)};
  for (int i = 0; i < 5; ++i) out.q[i] = std::exp(lq[i]);
  out.log_ratio = lq[2] + LogAddExp(lq[0], lq[4]) - LogAddExp(lq[1], lq[3]);
  out.lsi_lower = out.log_ratio > 0.0 ? std::expm1(out.log_ratio) : 0.0;
  return out;
}

// x - log1p(x).
double Excess(double x) {
  if (std::fabs(x) < 1e-4) return x * x * (0.5 - x * (1.0 / 3.0 - x * 0.25));
  return x - std::log1p(x);
}

}  // namespace

LSIProbe LsiLowerBound(double h, double K, double sigma, double x1, double x2) {
  if (!(h > 0.0) || !(K > 0.0) || !(sigma > 0.0)) throw InvalidArgument("h, K, sigma must be positive");
  const bool default_x1 = std::isnan(x1);
  if (default_x1) x1 = -40.0 * sigma;
  if (std::isnan(x2)) x2 = h * std::sqrt(sigma / K);
  LSIProbe out = Evaluate(h, K, sigma, x1, x2);
  if (default_x1) out.sensitivity = Evaluate(h, K, sigma, -80.0 * sigma, x2).lsi_lower - out.lsi_lower;
  return out;
}

T2Probe T2LowerBound(double h, double K, double sigma, double delta) {
  if (!(K > sigma) || !(sigma > 0.0)) throw InvalidArgument("t2 probe needs K > sigma > 0");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  T2Probe out;
  out.h = h;
  out.delta = delta;
  out.log_p_h = BernoulliLogWeight(h, K);
  const double a = 1.0 + sigma * sigma / (K * K);
  out.log_perturbation = -(1.0 - delta) * a * a * h * h / (8.0 * sigma * sigma);
  if (!(out.log_perturbation < out.log_p_h)) throw InvalidArgument("q_h <= 0: h too small for this delta");
  const double log_q = out.log_p_h + std::log(-std::expm1(out.log_perturbation - out.log_p_h));
  out.q_h = std::exp(log_q);
  const SmoothedMixture p(BernoulliTwoPoint(h, K), sigma);
  const SmoothedMixture q(
      AtomicDistribution::FromAtoms({{0.0, std::log1p(-out.q_h)}, {h, log_q}}), sigma);
  // Q - P moves mass p_h - q_h from h back to 0.
  const MixtureDifference diff = MixtureDifference::FromComponents(
      {{0.0, sigma, out.log_perturbation, 1}, {h, sigma, out.log_perturbation, -1}});
  out.w2sq = W2Squared(p, q, diff).total;
  out.kl = KlDivergence(p, q, diff).value;
  const double p_h = std::exp(out.log_p_h);
  const double d = std::exp(out.log_perturbation);
  out.kl_discrete = p_h * Excess(-d / p_h) + (1.0 - p_h) * Excess(d / (1.0 - p_h));
  if (!(out.kl > 0.0)) throw NumericError("t2 probe: KL underflowed to zero", out.kl);
  out.ratio = out.w2sq / out.kl;
  return out;
}

}  // namespace sot
