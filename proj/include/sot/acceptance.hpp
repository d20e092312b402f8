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

#ifndef SOT_ACCEPTANCE_HPP_
#define SOT_ACCEPTANCE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sot {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  // Known to be unattainable at the prescribed sizes; reported as FAIL but
  // does not change the suite's exit status in the acceptance binary.
  bool expected_failure = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct AcceptanceOptions {
  bool quick = false;  // reduced trial counts; tolerances unchanged
  std::uint64_t seed = 20260419;
  std::vector<int> only;  // empty runs all
};

std::vector<CriterionResult> RunAcceptance(
    const AcceptanceOptions& opt,
    const std::function<void(const CriterionResult&)>& on_result = {});

std::string FormatCriterion(const CriterionResult& r);

}  // namespace sot

#endif  // SOT_ACCEPTANCE_HPP_
