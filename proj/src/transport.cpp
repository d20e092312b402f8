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

#include "sot/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sot/common.hpp"
#include "sot/gaussian.hpp"
#include "sot/quadrature.hpp"
#include "sot/sampling.hpp"

namespace sot {
namespace {

constexpr double kCoreSigmas = 12.0;
constexpr int kMaxNewton = 100;
constexpr std::size_t kCheckGrid = 1000;
constexpr std::size_t kPointwiseChecks = 201;

// Mass of B on the interval of length d adjacent to t, on the side `dir`.
double SideMass(const SmoothedMixture& b, double t, double d, int dir) {
  return dir > 0 ? b.LogIntervalMass(t, t + d) : b.LogIntervalMass(t - d, t);
}

// Solves mass_B(side of t, length d) = exp(log_target) for d > 0.
double SolveSideLength(const SmoothedMixture& b, double t, double log_target,
                       int dir) {
  const double log_rho = b.LogPdf(t);
  const double d0 = std::exp(log_target - log_rho);
  const double sigma = b.sigma();
  if (d0 < 1e-6 * sigma) {
    // Exponential fit of rho on the short side: rho(t + dir x) ~ rho e^{g x}.
    const double step = 1e-4 * sigma;
    const double g = dir * (b.LogPdf(t + step) - b.LogPdf(t - step)) / (2.0 * step);
    const double r = std::exp(log_target - log_rho);
    if (std::fabs(g * r) < 1e-300) return r;
    return std::log1p(g * r) / g;
  }
  // Bracket in u = log d.
  double lo = std::log(d0);
  double hi = lo;
  auto G = [&](double u) { return SideMass(b, t, std::exp(u), dir) - log_target; };
  double g_lo = G(lo);
  double g_hi = g_lo;
  int guard = 0;
  while (g_lo > 0.0 && guard++ < 200) {
    hi = lo;
    g_hi = g_lo;
    lo -= kLog2;
    g_lo = G(lo);
  }
  guard = 0;
  while (g_hi < 0.0 && guard++ < 200) {
    lo = hi;
    g_lo = g_hi;
    hi += kLog2;
    g_hi = G(hi);
    if (std::exp(hi) > 1e6 * sigma + 1e6) break;
  }
  if (!(g_lo <= 0.0 && g_hi >= 0.0) || !std::isfinite(g_lo) || !std::isfinite(g_hi)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  double u = (g_lo == 0.0) ? lo : (g_hi == 0.0 ? hi : 0.5 * (lo + hi));
  for (int it = 0; it < kMaxNewton; ++it) {
    const double d = std::exp(u);
    const double lm = SideMass(b, t, d, dir);
    const double gu = lm - log_target;
    if (std::fabs(gu) <= 1e-13) return d;
    if (gu < 0.0) {
      lo = u;
    } else {
      hi = u;
    }
    if (hi - lo < 1e-13) return std::exp(0.5 * (lo + hi));
    const double slope = std::exp(u + b.LogPdf(t + dir * d) - lm);
    double next = (slope > 0.0 && std::isfinite(slope)) ? u - gu / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    u = next;
  }
  return std::exp(u);
}

// Certified bound on the integrand mass outside [lo, hi]. Every map between two
// same-family mixtures sends t into [min_B + s (t - max_A), max_B + s (t - min_A)]
// with s = sigma_B / sigma_A, so |T(t) - t| <= |u + v t| for two lines; each
// side of rho_A is a sum of Gaussian tails against those quadratics.
double TailBound(const SmoothedMixture& a, const SmoothedMixture& b, double lo,
                 double hi) {
  const double sa = a.sigma();
  const double s = b.sigma() / sa;
  const double v = s - 1.0;
  const double u1 = b.base().min_x() - s * a.base().max_x();
  const double u2 = b.base().max_x() - s * a.base().min_x();
  LogAccumulator acc;
  const AtomicDistribution& pa = a.base();
  for (std::size_t k = 0; k < pa.size(); ++k) {
    const double x = pa.x(k);
    for (double u : {u1, u2}) {
      // Right tail: t = x + sa z, z >= (hi - x) / sa.
      acc.Add(pa.logw(k) + LogGaussTailQuadratic((hi - x) / sa, u + v * x, v * sa));
      // Left tail: t = x - sa z, z >= (x - lo) / sa.
      acc.Add(pa.logw(k) + LogGaussTailQuadratic((x - lo) / sa, u + v * x, -v * sa));
    }
  }
  return std::exp(acc.Result());
}

std::vector<double> Centers(const SmoothedMixture& a, const SmoothedMixture& b) {
  std::vector<double> c = a.base().locations();
  c.insert(c.end(), b.base().locations().begin(), b.base().locations().end());
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

// Local maximization of f on [lo, hi] by golden section.
template <typename F>
double GoldenMax(F f, double lo, double hi, double best) {
  constexpr double kG = 0.6180339887498949;
  double x1 = hi - kG * (hi - lo);
  double x2 = lo + kG * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 60 && hi - lo > 1e-12 * (1.0 + std::fabs(lo)); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kG * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kG * (hi - lo);
      f1 = f(x1);
    }
  }
  return std::max({best, f1, f2});
}

}  // namespace

QuantileCoupling::QuantileCoupling(const SmoothedMixture& a, const SmoothedMixture& b)
    : a_(a), b_(b), diff_(MixtureDifference::Between(a, b)) {}

QuantileCoupling::QuantileCoupling(const SmoothedMixture& a, const SmoothedMixture& b,
                                   MixtureDifference b_minus_a)
    : a_(a), b_(b), diff_(std::move(b_minus_a)) {}

double QuantileCoupling::Displacement(double t) const {
  const double log_fa = a_.LogCdf(t);
  const bool upper = log_fa > -kLog2;
  const SignedLog d = diff_.Cdf(t, upper);
  if (d.sign == 0 || d.log_abs == kNegInf) return 0.0;
  // F_B(t) < F_A(t): the image lies to the right.
  const int dir = d.sign < 0 ? 1 : -1;
  // Once the moved mass is most of B's mass on that side, the side length is
  // set by the small remainder and the quantile form is the accurate one.
  const double log_side = dir > 0 ? b_.LogSf(t) : b_.LogCdf(t);
  if (d.log_abs < log_side - kLog2) {
    const double len = SolveSideLength(b_, t, d.log_abs, dir);
    if (std::isfinite(len)) return dir * len;
  }
  const double s = upper ? b_.QuantileFromLogSf(a_.LogSf(t)) : b_.QuantileFromLogCdf(log_fa);
  return s - t;
}

TransportEvaluation W2Squared(const SmoothedMixture& a, const SmoothedMixture& b,
                              const TransportOptions& opt) {
  return W2Squared(a, b, MixtureDifference::Between(a, b), opt);
}

TransportEvaluation W2Squared(const SmoothedMixture& a, const SmoothedMixture& b,
                              const MixtureDifference& b_minus_a,
                              const TransportOptions& opt) {
  TransportEvaluation ev;
  const QuantileCoupling coupling(a, b, b_minus_a);
  const double scale = std::max(a.sigma(), b.sigma());
  const double step = 0.5 * std::min(a.sigma(), b.sigma());
  const std::vector<double> pts = BuildMixturePartition(
      Centers(a, b), scale, step, kCoreSigmas, opt.reach_sigmas, opt.breakpoints);
  ev.window_lo = pts.front();
  ev.window_hi = pts.back();
  if (b_minus_a.empty()) {
    if (opt.keep_grid) {
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double t = 0.5 * (pts[i] + pts[i + 1]);
        ev.grid.push_back({t, a.Pdf(t), t, 0.0});
      }
    }
    return ev;
  }
  auto integrand = [&](double t) {
    const double d = coupling.Displacement(t);
    if (d == 0.0) return 0.0;
    return std::exp(a.LogPdf(t) + 2.0 * std::log(std::fabs(d)));
  };
  QuadratureOptions q;
  q.abs_tol = opt.tol;
  q.rel_tol = opt.rel_tol;
  q.keep_leaves = opt.keep_grid;
  QuadratureResult r;
  try {
    r = IntegrateAdaptive(integrand, pts, q);
  } catch (const NumericError& e) {
    throw NumericError(std::string("w2 quadrature: ") + e.what(), e.partial());
  }
  if (!r.converged) {
    throw NumericError("w2 quadrature did not converge at max depth", r.value);
  }
  ev.total = std::max(0.0, r.value);
  ev.quadrature_error = r.error;
  ev.evaluations = r.evaluations;
  ev.tail_bound = TailBound(a, b, ev.window_lo, ev.window_hi);
  if (opt.keep_grid) {
    ev.grid.reserve(r.leaves.size());
    for (const QuadratureLeaf& leaf : r.leaves) {
      const double t = 0.5 * (leaf.a + leaf.b);
      ev.grid.push_back({t, a.Pdf(t), t + coupling.Displacement(t),
                         std::max(0.0, leaf.value)});
    }
  }
  return ev;
}

std::optional<double> W2CrossingLowerBound(const SmoothedMixture& a,
                                           const SmoothedMixture& b, double t) {
  if (a.LogCdf(t) < b.LogCdf(t + 2.0)) return std::nullopt;
  return std::exp(b.LogIntervalMass(t + 1.0, t + 2.0));
}

DisplacementReport DisplacementBoundCheck(const SmoothedMixture& p,
                                          const SmoothedMixture& q, double t,
                                          double h) {
  if (!(h > 0.0)) throw InvalidArgument("h must be positive");
  DisplacementReport rep;
  rep.t = t;
  rep.h = h;
  const MixtureDifference diff = MixtureDifference::Between(p, q);
  auto gap = [&](double x) {
    if (diff.empty()) return 0.0;
    return std::fabs(diff.Cdf(x, p.LogCdf(x) > -kLog2).value());
  };
  auto neg_rho = [&](double x) { return -p.Pdf(x); };
  const double dx = 2.0 * h / kCheckGrid;
  double best_gap = -1.0;
  double best_neg = -kInf;
  std::size_t arg_gap = 0;
  std::size_t arg_rho = 0;
  for (std::size_t i = 0; i <= kCheckGrid; ++i) {
    const double x = (i == kCheckGrid) ? t + h : t - h + dx * i;
    const double g = gap(x);
    const double nr = neg_rho(x);
    if (g > best_gap) {
      best_gap = g;
      arg_gap = i;
    }
    if (nr > best_neg) {
      best_neg = nr;
      arg_rho = i;
    }
  }
  auto cell = [&](std::size_t i) {
    const double lo = t - h + dx * (i == 0 ? 0.0 : static_cast<double>(i - 1));
    const double hi = std::min(t + h, t - h + dx * static_cast<double>(i + 1));
    return std::pair<double, double>(lo, hi);
  };
  auto [glo, ghi] = cell(arg_gap);
  rep.sup_cdf_gap = GoldenMax(gap, glo, ghi, best_gap);
  auto [rlo, rhi] = cell(arg_rho);
  rep.inf_density = -GoldenMax(neg_rho, rlo, rhi, best_neg);
  rep.delta = rep.sup_cdf_gap / rep.inf_density;
  rep.premise = rep.delta <= h;
  rep.displacement = std::fabs(QuantileCoupling(p, q, diff).Displacement(t));
  if (rep.premise) {
    rep.holds = rep.displacement <= rep.delta * (1.0 + 1e-9) + 1e-13;
  }
  return rep;
}

double TruncationBound(const SubgaussianProfile& p_profile,
                       const SubgaussianProfile& q_profile, double x) {
  const double k1 = p_profile.K * std::sqrt(2.0 * std::log(2.0 * p_profile.C));
  const double r = std::fabs(x);
  const double tt = r + 2.0 + k1;
  const double k2 =
      q_profile.K * tt + q_profile.K * std::sqrt(2.0 * std::log(4.0 * tt * q_profile.C));
  return 2.0 * r + 2.0 + k1 + k2;
}

TruncationReport TruncationBoundCheck(const SubgaussianProfile& p_profile,
                                      const SubgaussianProfile& q_profile,
                                      const SmoothedMixture& p,
                                      const SmoothedMixture& q,
                                      const std::vector<double>& x_grid) {
  if (p.sigma() != 1.0 || q.sigma() != 1.0) {
    throw InvalidArgument("truncation bound needs sigma = 1; rescale first");
  }
  auto verify = [](const AtomicDistribution& base, SubgaussianProfile prof,
                   const char* which) {
    if (!(prof.K > 0.0) || !(prof.C >= 1.0)) {
      throw InvalidArgument(std::string(which) + " profile needs K > 0 and C >= 1");
    }
    prof.mean = 0.0;
    std::vector<double> r_grid;
    const double top = base.max_abs_x() + 10.0 * prof.K;
    for (int i = 0; i <= 2000; ++i) r_grid.push_back(top * i / 2000.0);
    for (std::size_t k = 0; k < base.size(); ++k) r_grid.push_back(std::fabs(base.x(k)));
    if (ProfileViolation(base, prof, r_grid) >= 0.0) {
      throw InvalidArgument(std::string(which) + " profile tail inequality fails");
    }
  };
  verify(p.base(), p_profile, "P");
  verify(q.base(), q_profile, "Q");
  TruncationReport rep;
  const QuantileCoupling coupling(p, q);
  for (double x : x_grid) {
    const double disp = std::fabs(coupling.Displacement(x));
    const double bound = TruncationBound(p_profile, q_profile, x);
    const double ratio = disp / bound;
    ++rep.points;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (disp > bound) {
      if (rep.violations == 0) rep.first_violation = x;
      ++rep.violations;
    }
  }
  return rep;
}

DecompositionReport UpperBoundDecomposition(const SmoothedMixture& p, double K,
                                            std::size_t n, std::uint64_t seed) {
  if (p.sigma() != 1.0) throw InvalidArgument("decomposition needs sigma = 1");
  if (!(K > 0.0)) throw InvalidArgument("K must be positive");
  if (n < 2) throw InvalidArgument("decomposition needs n >= 2");
  DecompositionReport rep;
  rep.n = n;
  const double k2 = K * K;
  rep.alpha = (1.0 + k2) * (1.0 + k2) / (4.0 * (1.0 + k2 * k2));
  const double logn = std::log(static_cast<double>(n));
  rep.truncation_radius = 2.0 * K * std::sqrt(2.0 * logn);
  rep.density_level = std::exp(-rep.alpha * logn);
  const SmoothedMixture pn(Sample(p.base(), n, seed).ToAtomic(), 1.0);

  const double level = -rep.alpha * logn;
  const double R = rep.truncation_radius;
  std::vector<double> breaks = {-R, R};
  // Crossings of log rho = level inside [-R, R].
  const std::size_t scan = 4000;
  auto f = [&](double t) { return p.LogPdf(t) - level; };
  double prev_t = -R;
  double prev_f = f(prev_t);
  for (std::size_t i = 1; i <= scan; ++i) {
    const double t = -R + 2.0 * R * i / scan;
    const double ft = f(t);
    if ((prev_f < 0.0) != (ft < 0.0)) {
      double lo = prev_t;
      double hi = t;
      const bool rising = prev_f < 0.0;
      for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (lo + hi);
        if ((f(m) < 0.0) == rising) {
          lo = m;
        } else {
          hi = m;
        }
      }
      breaks.push_back(0.5 * (lo + hi));
    }
    prev_t = t;
    prev_f = ft;
  }
  TransportOptions opt;
  opt.keep_grid = true;
  opt.breakpoints = breaks;
  const TransportEvaluation ev = W2Squared(p, pn, opt);
  rep.total = ev.total;
  for (const TransportPoint& pt : ev.grid) {
    if (std::fabs(pt.t) > R) {
      rep.outer += pt.contribution;
    } else if (p.LogPdf(pt.t) < level) {
      rep.low_density += pt.contribution;
    } else {
      rep.high_density += pt.contribution;
    }
  }
  const MixtureDifference diff = MixtureDifference::Between(p, pn);
  const QuantileCoupling coupling(p, pn, diff);
  for (std::size_t i = 0; i < kPointwiseChecks; ++i) {
    const double t = -R + 2.0 * R * i / (kPointwiseChecks - 1);
    const DisplacementReport d = DisplacementBoundCheck(p, pn, t, 1.0);
    if (d.premise) {
      ++rep.pointwise_checked;
      if (!d.holds) ++rep.pointwise_violations;
    }
    if (!diff.empty()) {
      const double gap = std::fabs(diff.Cdf(t, p.LogCdf(t) > -kLog2).value());
      const double disp = std::fabs(coupling.Displacement(t));
      if (gap > 0.0) {
        rep.max_displacement_ratio =
            std::max(rep.max_displacement_ratio, disp / (gap / p.Pdf(t)));
      }
    }
  }
  return rep;
}

}  // namespace sot
