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

#include "sot/divergences.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <string>

#include "sot/common.hpp"
#include "sot/gaussian.hpp"
#include "sot/quadrature.hpp"

namespace sot {
namespace {

constexpr double kCoreSigmas = 12.0;
constexpr double kReachSigmas = 38.0;
constexpr double kRelTol = 1e-10;

enum class Kind { kKl, kChi2, kRenyi };

// r - log1p(r), r > -1.
double KlExcess(double r) {
  if (std::fabs(r) < 1e-4) {
    return r * r * (0.5 - r * (1.0 / 3.0 - r * (0.25 - r / 5.0)));
  }
  return r - std::log1p(r);
}

// (1 + s)^lambda - 1 - lambda s, s >= -1.
double RenyiExcess(double s, double lambda) {
  if (std::fabs(s) < 1e-3) {
    const double c2 = lambda * (lambda - 1.0) / 2.0;
    const double c3 = c2 * (lambda - 2.0) / 3.0;
    const double c4 = c3 * (lambda - 3.0) / 4.0;
    return s * s * (c2 + s * (c3 + s * c4));
  }
  return std::expm1(lambda * std::log1p(s)) - lambda * s;
}

// log of int_c^inf exp(-A t^2 + B t + C) dt, A > 0.
double LogTailExpQuadratic(double A, double B, double C, double c) {
  const double m = B / (2.0 * A);
  return C + B * m / 2.0 + 0.5 * std::log(M_PI / A) +
         LogNormSf(std::sqrt(2.0 * A) * (c - m));
}

// Bound on int_c^inf rho_A^lambda rho_B^(1 - lambda) for c beyond every atom,
// from a Gaussian envelope of rho_A and one component of rho_B. Arguments are
// already mirrored for the left tail.
double LogPowerTail(double a_far, double sa, double b_far, double logw_b,
                    double sb, double lambda, double c) {
  const double A = lambda / (2.0 * sa * sa) + (1.0 - lambda) / (2.0 * sb * sb);
  if (!(A > 0.0)) return kInf;
  const double B = lambda * a_far / (sa * sa) + (1.0 - lambda) * b_far / (sb * sb);
  const double C = -lambda * a_far * a_far / (2.0 * sa * sa) -
                   (1.0 - lambda) * b_far * b_far / (2.0 * sb * sb) +
                   (1.0 - lambda) * logw_b - lambda * (kLogSqrt2Pi + std::log(sa)) -
                   (1.0 - lambda) * (kLogSqrt2Pi + std::log(sb));
  return LogTailExpQuadratic(A, B, C, c);
}

// True when rho_A^lambda rho_B^(1 - lambda) is not integrable on the tail
// beyond the outermost atoms a_far, b_far (mirrored for the left tail).
bool PowerTailDiverges(double a_far, double sa, double b_far, double sb, double lambda) {
  const double A = lambda / (2.0 * sa * sa) + (1.0 - lambda) / (2.0 * sb * sb);
  const double B = lambda * a_far / (sa * sa) + (1.0 - lambda) * b_far / (sb * sb);
  return A < 0.0 || (A == 0.0 && B >= 0.0);
}

// Where the tail envelope rho_A^lambda rho_B^(1 - lambda) has spent all but
// e^-72 of its mass, beyond a peak that can sit far past the atoms.
double TailReach(double a_far, double sa, double b_far, double sb, double lambda) {
  const double A = lambda / (2.0 * sa * sa) + (1.0 - lambda) / (2.0 * sb * sb);
  const double B = lambda * a_far / (sa * sa) + (1.0 - lambda) * b_far / (sb * sb);
  return B / (2.0 * A) + 12.0 / std::sqrt(2.0 * A);
}

void ExtendTail(std::vector<double>& pts, double reach, double step) {
  const double edge = pts.back();
  if (!(reach > edge)) return;
  const int cells = std::min(400, static_cast<int>(std::ceil((reach - edge) / step)));
  for (int i = 1; i <= cells; ++i) pts.push_back(edge + (reach - edge) * i / cells);
}

Divergence Integrate(const SmoothedMixture& a, const SmoothedMixture& b,
                     const MixtureDifference& diff, Kind kind, double lambda,
                     double tol) {
  if (a.base().empty() || b.base().empty()) throw InvalidArgument("empty mixture");
  Divergence out;
  if (diff.empty()) return out;
  if (kind != Kind::kKl) {
    const double l = kind == Kind::kRenyi ? lambda : 2.0;
    const AtomicDistribution& pa = a.base();
    const AtomicDistribution& pb = b.base();
    if (PowerTailDiverges(pa.max_x(), a.sigma(), pb.max_x(), b.sigma(), l) ||
        PowerTailDiverges(-pa.min_x(), a.sigma(), -pb.min_x(), b.sigma(), l)) {
      out.value = kInf;
      out.tail_bound = kInf;
      return out;
    }
  }

  auto integrand = [&](double t) -> double {
    const double la = a.LogPdf(t);
    const double lb = b.LogPdf(t);
    const SignedLog d = diff.Density(t);  // rho_B - rho_A
    if (d.sign == 0) return 0.0;
    if (kind == Kind::kKl) {
      if (la == kNegInf) return std::exp(lb);
      if (lb == kNegInf) return kInf;
      const double log_r = d.log_abs - la;
      // Away from r ~ 0 write rho_A (r - log1p r) with log1p r = lb - la;
      // for large r this also avoids 0 * inf.
      if (d.sign > 0 && log_r > 0.0) return std::exp(d.log_abs) - std::exp(la) * (lb - la);
      const double r = d.sign * std::exp(log_r);
      if (r < -0.5) return std::exp(la) * (r - (lb - la));
      return std::exp(la) * KlExcess(r);
    }
    if (lb == kNegInf) return la == kNegInf ? 0.0 : kInf;
    if (kind == Kind::kChi2) return std::exp(2.0 * d.log_abs - lb);
    if (d.sign < 0 && d.log_abs > lb) {
      // s > 1: rho_A^l rho_B^(1-l) - rho_B - l (rho_A - rho_B).
      return std::exp(lambda * la + (1.0 - lambda) * lb) - std::exp(lb) -
             lambda * std::exp(d.log_abs);
    }
    const double s = -d.sign * std::exp(d.log_abs - lb);
    return std::exp(lb) * RenyiExcess(std::max(s, -1.0), lambda);
  };

  std::vector<double> centers = a.base().locations();
  centers.insert(centers.end(), b.base().locations().begin(), b.base().locations().end());
  const double scale = std::max(a.sigma(), b.sigma());
  const double step = 0.5 * std::min(a.sigma(), b.sigma());
  std::vector<double> pts =
      BuildMixturePartition(centers, scale, step, kCoreSigmas, kReachSigmas);
  if (kind != Kind::kKl) {
    const AtomicDistribution& pa = a.base();
    const AtomicDistribution& pb = b.base();
    const double l = kind == Kind::kRenyi ? lambda : 2.0;
    const double right = TailReach(pa.max_x(), a.sigma(), pb.max_x(), b.sigma(), l);
    const double left = -TailReach(-pa.min_x(), a.sigma(), -pb.min_x(), b.sigma(), l);
    ExtendTail(pts, right, scale);
    for (double& p : pts) p = -p;
    std::reverse(pts.begin(), pts.end());
    ExtendTail(pts, -left, scale);
    for (double& p : pts) p = -p;
    std::reverse(pts.begin(), pts.end());
  }

  QuadratureOptions q;
  q.abs_tol = tol;
  q.rel_tol = kRelTol;
  // exp of a log density near -L carries relative error about L ulps.
  double mag = 0.0;
  for (double t : {pts.front(), pts.back()}) {
    mag = std::max(mag, 2.0 * std::fabs(a.LogPdf(t)) + std::fabs(b.LogPdf(t)));
  }
  q.noise_rel = std::max(q.noise_rel, 8.0 * std::numeric_limits<double>::epsilon() * mag);
  QuadratureResult r;
  try {
    r = IntegrateAdaptive(integrand, pts, q);
  } catch (const NumericError& e) {
    throw NumericError(std::string("divergence quadrature: ") + e.what(), e.partial());
  }
  if (!r.converged) throw NumericError("divergence quadrature did not converge", r.value);

  // Tails: each integrand is at most rho_A^l rho_B^(1-l) + l rho_B with
  // l = 2 for KL and chi2.
  const double l = kind == Kind::kRenyi ? lambda : 2.0;
  const AtomicDistribution& pa = a.base();
  const AtomicDistribution& pb = b.base();
  const double lo = pts.front();
  const double hi = pts.back();
  LogAccumulator tail;
  tail.Add(LogPowerTail(pa.max_x(), a.sigma(), pb.max_x(), pb.logw(pb.size() - 1),
                        b.sigma(), l, hi));
  tail.Add(LogPowerTail(-pa.min_x(), a.sigma(), -pb.min_x(), pb.logw(0), b.sigma(), l,
                        -lo));
  tail.Add(std::log(l) + b.LogSf(hi));
  tail.Add(std::log(l) + b.LogCdf(lo));
  out.tail_bound = std::exp(tail.Result());
  out.quadrature_error = r.error;

  double v = r.value;
  if (v < 0.0 && v >= -std::max(tol, r.error)) v = 0.0;
  if (kind == Kind::kRenyi) {
    out.value = std::log1p(v) / (lambda - 1.0);
    out.quadrature_error /= (lambda - 1.0);
  } else {
    out.value = v;
  }
  return out;
}

// log(1 - exp(l)) and log|1 - exp(l)|.
double LogAbsOneMinusExp(double l) {
  if (l == 0.0) return kNegInf;
  if (l < 0.0) return l > -kLog2 ? std::log(-std::expm1(l)) : std::log1p(-std::exp(l));
  return l + std::log(-std::expm1(-l));
}

struct AtomWindow {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;
  std::vector<double> pts;
};

AtomWindow WindowFor(const AtomicDistribution& p, std::size_t k, double sigma,
                     double radius) {
  AtomWindow w;
  const double reach = kReachSigmas * sigma;
  w.lo = std::max(-reach, -radius - p.x(k));
  w.hi = std::min(reach, radius - p.x(k));
  if (!(w.hi > w.lo)) return w;
  w.empty = false;
  std::vector<double> extra;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j != k) extra.push_back(p.x(j) - p.x(k));
  }
  w.pts = BuildPartition(w.lo, w.hi, 0.25 * sigma, {0.0}, extra);
  return w;
}

// log(1 + S_k(z)) with S_k = sum_{j != k} (w_j phi(z + x_k - x_j)) / (w_k phi(z)),
// so rho(x_k + z) = w_k phi(z) (1 + S_k(z)) without forming x_k + z.
double LogOnePlusS(const AtomicDistribution& p, std::size_t k, double sigma, double z) {
  LogAccumulator acc;
  acc.Add(0.0);
  const double inv = 1.0 / (2.0 * sigma * sigma);
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j == k) continue;
    const double d = p.x(k) - p.x(j);
    acc.Add(p.logw(j) - p.logw(k) - (d * d + 2.0 * d * z) * inv);
  }
  return acc.Result();
}

double LogPhi(double z, double sigma) {
  return -kLogSqrt2Pi - std::log(sigma) - z * z / (2.0 * sigma * sigma);
}

void CheckChannel(const AtomicDistribution& p, double sigma, double radius) {
  if (p.empty()) throw InvalidArgument("empty base law");
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  if (!(radius > 0.0)) throw InvalidArgument("truncation radius must be positive");
}

}  // namespace

Divergence KlDivergence(const SmoothedMixture& a, const SmoothedMixture& b, double tol) {
  return Integrate(a, b, MixtureDifference::Between(a, b), Kind::kKl, 1.0, tol);
}

Divergence KlDivergence(const SmoothedMixture& a, const SmoothedMixture& b,
                        const MixtureDifference& b_minus_a, double tol) {
  return Integrate(a, b, b_minus_a, Kind::kKl, 1.0, tol);
}

Divergence Chi2Divergence(const SmoothedMixture& a, const SmoothedMixture& b,
                          double tol) {
  return Integrate(a, b, MixtureDifference::Between(a, b), Kind::kChi2, 2.0, tol);
}

Divergence RenyiDivergence(const SmoothedMixture& a, const SmoothedMixture& b,
                           double lambda, double tol) {
  if (!(lambda > 1.0) || !(lambda <= 2.0)) throw InvalidArgument("lambda must lie in (1, 2]");
  return Integrate(a, b, MixtureDifference::Between(a, b), Kind::kRenyi, lambda, tol);
}

double DefaultTruncationRadius(const AtomicDistribution& p, double sigma, double tol) {
  return p.max_abs_x() + sigma * std::sqrt(2.0 * std::log(1.0 / tol)) + 10.0 * sigma;
}

MIEstimate Chi2MutualInformation(const AtomicDistribution& p, double sigma,
                                 double truncation_radius, double tol) {
  CheckChannel(p, sigma, truncation_radius);
  const SmoothedMixture y(p, sigma);
  const double log_mass_r = y.LogIntervalMass(-truncation_radius, truncation_radius);
  MIEstimate out;
  out.truncation_radius = truncation_radius;
  QuadratureOptions q;
  q.abs_tol = tol;
  q.rel_tol = kRelTol;
  double total = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const AtomWindow w = WindowFor(p, k, sigma, truncation_radius);
    double inc = 0.0;
    if (!w.empty) {
      // w_k (phi_k - rho)^2 / rho = phi(z) / (1 + S) (1 - u)^2, u = w_k (1 + S).
      auto f = [&](double z) {
        const double l1s = LogOnePlusS(p, k, sigma, z);
        return std::exp(LogPhi(z, sigma) - l1s +
                        2.0 * LogAbsOneMinusExp(p.logw(k) + l1s));
      };
      const QuadratureResult r = IntegrateAdaptive(f, w.pts, q);
      if (!r.converged) throw NumericError("chi2 information quadrature", r.value);
      out.quadrature_error += r.error;
      inc = r.value;
      // Outside the window phi_k is negligible and the integrand is w_k rho.
      const double log_win = y.LogIntervalMass(p.x(k) + w.lo, p.x(k) + w.hi);
      if (log_mass_r > log_win) inc += std::exp(p.logw(k) + LogSubExp(log_mass_r, log_win));
    } else {
      inc = std::exp(p.logw(k) + log_mass_r);
    }
    out.partial_by_atom.push_back(inc);
    total += inc;
  }
  out.value = std::max(total, 0.0);
  return out;
}

MIEstimate RenyiMutualInformation(const AtomicDistribution& p, double sigma,
                                  double lambda, double truncation_radius, double tol) {
  CheckChannel(p, sigma, truncation_radius);
  if (!(lambda > 1.0) || !(lambda < 2.0)) throw InvalidArgument("lambda must lie in (1, 2)");
  MIEstimate out;
  out.truncation_radius = truncation_radius;
  QuadratureOptions q;
  q.abs_tol = tol;
  q.rel_tol = kRelTol;
  double excess = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const AtomWindow w = WindowFor(p, k, sigma, truncation_radius);
    const double wk = std::exp(p.logw(k));
    double inc = -wk;
    if (!w.empty) {
      // w_k^(2-l) phi (1 + S)^(1-l) - w_k phi = w_k phi (u^(1-l) - 1).
      auto f = [&](double z) {
        const double x = (1.0 - lambda) * (p.logw(k) + LogOnePlusS(p, k, sigma, z));
        const double lp = LogPhi(z, sigma);
        if (x > 30.0) return std::exp(p.logw(k) + lp + x);
        return wk * std::exp(lp) * std::expm1(x);
      };
      const QuadratureResult r = IntegrateAdaptive(f, w.pts, q);
      if (!r.converged) throw NumericError("renyi information quadrature", r.value);
      out.quadrature_error += r.error;
      const double p_out = 1.0 - std::exp(LogNormInterval(w.lo / sigma, w.hi / sigma));
      inc = r.value - wk * p_out;
    }
    out.partial_by_atom.push_back(inc);
    excess += inc;
  }
  if (!(excess > -1.0)) throw NumericError("renyi information truncated below zero mass", excess);
  out.value = std::log1p(excess) / (lambda - 1.0);
  out.quadrature_error /= (lambda - 1.0);
  return out;
}

double SoftCoveringKlBound(double i_lambda, double lambda, double n) {
  if (!(lambda > 1.0)) throw InvalidArgument("lambda must exceed 1");
  if (!(n >= 1.0)) throw InvalidArgument("n must be at least 1");
  const double x = (lambda - 1.0) * (i_lambda - std::log(n));
  const double sp = x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
  return sp / (lambda - 1.0);
}

}  // namespace sot
