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

#ifndef SOT_QUADRATURE_HPP_
#define SOT_QUADRATURE_HPP_

#include <cstddef>
#include <functional>
#include <vector>

namespace sot {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  // The target error is min(abs_tol, rel_tol * coarse estimate), so tiny
  // integrals still get relative accuracy.
  double rel_tol = 1e-9;
  // Relative rounding level of the integrand. Targets below it are raised,
  // and a leaf whose Simpson difference is within it stops refining.
  double noise_rel = 1e-13;
  int max_depth = 40;
  bool keep_leaves = false;
};

struct QuadratureLeaf {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double f_mid = 0.0;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  double target = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
  std::vector<QuadratureLeaf> leaves;
};

// Adaptive Simpson over each cell of a sorted breakpoint list.
QuadratureResult IntegrateAdaptive(const std::function<double(double)>& f,
                                   const std::vector<double>& breakpoints,
                                   const QuadratureOptions& opt);

// Breakpoints on [lo, hi] with spacing at most `step`, refined near each
// center when the span is too wide for a uniform grid.
std::vector<double> BuildPartition(double lo, double hi, double step,
                                   const std::vector<double>& centers,
                                   const std::vector<double>& extra = {});

// Partition for integrands built from Gaussian bumps at `centers`: spacing
// `step` out to `core` scale units beyond the outermost centers, then a
// coarse ladder out to `reach` units.
std::vector<double> BuildMixturePartition(std::vector<double> centers,
                                          double scale, double step,
                                          double core, double reach,
                                          const std::vector<double>& extra = {});

}  // namespace sot

#endif  // SOT_QUADRATURE_HPP_
