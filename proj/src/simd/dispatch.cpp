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

#include <cstdlib>
#include <cstring>

#include "sot/simd/kernels.hpp"

namespace sot::simd {
namespace {

Isa Detect() {
  const char* env = std::getenv("SOT_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::kScalar;
  return Avx2Available() ? Isa::kAvx2 : Isa::kScalar;
}

}  // namespace

const char* IsaName(Isa isa) {
  switch (isa) {
    case Isa::kAvx2:
      return "avx2";
    case Isa::kScalar:
      break;
  }
  return "scalar";
}

bool Avx2Available() {
#if SOT_SIMD_X86 && (defined(__GNUC__) || defined(__clang__))
  static const bool ok =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa ActiveIsa() {
  static const Isa isa = Detect();
  return isa;
}

double LogSumExpGauss(const double* x, const double* logw, std::size_t n,
                      double t, double inv_two_var) {
#if SOT_SIMD_X86
  if (ActiveIsa() == Isa::kAvx2 && n >= 8) {
    return avx2::LogSumExpGauss(x, logw, n, t, inv_two_var);
  }
#endif
  return scalar::LogSumExpGauss(x, logw, n, t, inv_two_var);
}

SquaredDiffMoments SquaredDiffSums(const double* a, const double* b,
                                   std::size_t n) {
#if SOT_SIMD_X86
  if (ActiveIsa() == Isa::kAvx2) return avx2::SquaredDiffSums(a, b, n);
#endif
  return scalar::SquaredDiffSums(a, b, n);
}

}  // namespace sot::simd
