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

#include "sot/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "sot/common.hpp"

namespace sot {
namespace {

constexpr std::size_t kUniformCellLimit = 4096;

struct Simpson {
  const std::function<double(double)>& f;
  const QuadratureOptions& opt;
  QuadratureResult& out;
  bool depth_limited = false;

  double Eval(double t) {
    ++out.evaluations;
    const double v = f(t);
    if (!std::isfinite(v)) {
      throw NumericError("integrand is not finite at t=" + std::to_string(t), out.value);
    }
    return v;
  }

  void Refine(double a, double b, double fa, double fm, double fb, double whole,
              double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = Eval(lm);
    const double frm = Eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    const bool noise = std::fabs(diff) <= opt.noise_rel * (std::fabs(left) + std::fabs(right));
    if (std::fabs(diff) <= 15.0 * tol || noise || depth >= opt.max_depth) {
      // A leaf cut off at max depth may sit on a near-jump, where the
      // Richardson estimate is optimistic; charge it the full difference.
      const bool cut = std::fabs(diff) > 15.0 * tol && !noise;
      if (cut) depth_limited = true;
      const double v = left + right + diff / 15.0;
      out.value += v;
      out.error += cut || noise ? std::fabs(diff) : std::fabs(diff) / 15.0;
      if (opt.keep_leaves) {
        out.leaves.push_back({a, m, left + diff / 30.0, flm});
        out.leaves.push_back({m, b, right + diff / 30.0, frm});
      }
      return;
    }
    Refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1);
    Refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

QuadratureResult IntegrateAdaptive(const std::function<double(double)>& f,
                                   const std::vector<double>& breakpoints,
                                   const QuadratureOptions& opt) {
  QuadratureResult out;
  if (breakpoints.size() < 2) return out;
  Simpson s{f, opt, out};
  const std::size_t cells = breakpoints.size() - 1;
  std::vector<double> fa(cells + 1);
  std::vector<double> fm(cells);
  for (std::size_t i = 0; i <= cells; ++i) fa[i] = s.Eval(breakpoints[i]);
  double coarse = 0.0;
  std::vector<double> whole(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double a = breakpoints[i];
    const double b = breakpoints[i + 1];
    fm[i] = s.Eval(0.5 * (a + b));
    whole[i] = (b - a) / 6.0 * (fa[i] + 4.0 * fm[i] + fa[i + 1]);
    coarse += std::fabs(whole[i]);
  }
  double target = opt.abs_tol;
  if (opt.rel_tol > 0.0 && coarse > 0.0) {
    target = target > 0.0 ? std::min(target, opt.rel_tol * coarse) : opt.rel_tol * coarse;
  }
  target = std::max({target, opt.noise_rel * coarse, 1e-300});
  out.target = target;
  const double span = breakpoints.back() - breakpoints.front();
  for (std::size_t i = 0; i < cells; ++i) {
    const double a = breakpoints[i];
    const double b = breakpoints[i + 1];
    s.Refine(a, b, fa[i], fm[i], fa[i + 1], whole[i], target * (b - a) / span, 0);
  }
  out.converged = !s.depth_limited || out.error <= target;
  return out;
}

std::vector<double> BuildPartition(double lo, double hi, double step,
                                   const std::vector<double>& centers,
                                   const std::vector<double>& extra) {
  if (!(hi > lo) || !(step > 0.0)) throw InvalidArgument("bad partition range");
  std::vector<double> pts;
  const double cells = (hi - lo) / step;
  if (cells <= static_cast<double>(kUniformCellLimit)) {
    const std::size_t n = static_cast<std::size_t>(std::ceil(cells));
    for (std::size_t i = 0; i <= n; ++i) pts.push_back(lo + (hi - lo) * i / n);
  } else {
    pts.push_back(lo);
    pts.push_back(hi);
    for (double c : centers) {
      double off = 0.0;
      double inc = step;
      int k = 0;
      while (off <= hi - lo) {
        if (c + off >= lo && c + off <= hi) pts.push_back(c + off);
        if (off > 0.0 && c - off >= lo && c - off <= hi) pts.push_back(c - off);
        if (++k > 32) inc *= 1.5;
        off += inc;
      }
    }
  }
  for (double e : extra) {
    if (e > lo && e < hi) pts.push_back(e);
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  const double eps = 1e-12 * std::max({1.0, std::fabs(lo), std::fabs(hi)});
  for (double p : pts) {
    if (out.empty() || p - out.back() > eps) out.push_back(p);
  }
  if (out.back() < hi) out.back() = hi;
  return out;
}

std::vector<double> BuildMixturePartition(std::vector<double> centers,
                                          double scale, double step,
                                          double core, double reach,
                                          const std::vector<double>& extra) {
  if (centers.empty()) throw InvalidArgument("partition needs at least one center");
  std::sort(centers.begin(), centers.end());
  const double lo = centers.front() - core * scale;
  const double hi = centers.back() + core * scale;
  std::vector<double> pts = BuildPartition(lo, hi, step, centers, extra);
  std::vector<double> outer;
  for (double u = core; u < reach;) {
    u = std::min(reach, u + std::max(2.0, 0.15 * u));
    outer.push_back(u);
  }
  std::vector<double> out;
  for (auto it = outer.rbegin(); it != outer.rend(); ++it) {
    out.push_back(centers.front() - *it * scale);
  }
  out.insert(out.end(), pts.begin(), pts.end());
  for (double u : outer) out.push_back(centers.back() + u * scale);
  for (double e : extra) {
    if ((e < lo && e > out.front()) || (e > hi && e < out.back())) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace sot
