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

#include "sot/dist_io.hpp"

#include <cmath>

#include "sot/common.hpp"
#include "sot/gaussian.hpp"

namespace sot {
namespace {

constexpr double kMassSlack = 1e-6;

double RequireNumber(const nlohmann::json& j, const std::string& key,
                     const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(path + "." + key, "missing");
  if (!j[key].is_number()) throw SchemaError(path + "." + key, "expected a number");
  return j[key].get<double>();
}

}  // namespace

nlohmann::json ToJson(const AtomicDistribution& p) {
  nlohmann::json atoms = nlohmann::json::array();
  for (std::size_t k = 0; k < p.size(); ++k) {
    atoms.push_back({{"x", p.x(k)}, {"logw", p.logw(k)}});
  }
  return {{"atoms", atoms}};
}

nlohmann::json ToJson(const SmoothedMixture& m) {
  nlohmann::json j = ToJson(m.base());
  j["sigma"] = m.sigma();
  return j;
}

AtomicDistribution AtomicFromJson(const nlohmann::json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "$" : path, "expected an object");
  if (!j.contains("atoms")) throw SchemaError(path + ".atoms", "missing");
  const nlohmann::json& arr = j["atoms"];
  if (!arr.is_array() || arr.empty()) {
    throw SchemaError(path + ".atoms", "expected a non-empty array");
  }
  std::vector<Atom> atoms;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string at = path + ".atoms[" + std::to_string(k) + "]";
    const double x = RequireNumber(arr[k], "x", at);
    const double lw = RequireNumber(arr[k], "logw", at);
    if (!std::isfinite(x)) throw SchemaError(at + ".x", "must be finite");
    if (!std::isfinite(lw)) throw SchemaError(at + ".logw", "must be finite");
    atoms.push_back({x, lw});
  }
  std::vector<double> lws;
  for (const Atom& a : atoms) lws.push_back(a.logw);
  if (std::fabs(LogSumExp(lws)) > kMassSlack) {
    throw SchemaError(path + ".atoms", "weights must sum to 1");
  }
  return AtomicDistribution::FromAtoms(std::move(atoms));
}

SmoothedMixture MixtureFromJson(const nlohmann::json& j, const std::string& path) {
  AtomicDistribution base = AtomicFromJson(j, path);
  const double sigma = RequireNumber(j, "sigma", path);
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw SchemaError(path + ".sigma", "must be positive and finite");
  }
  return SmoothedMixture(std::move(base), sigma);
}

}  // namespace sot
