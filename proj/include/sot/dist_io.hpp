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

// JSON form: {"atoms":[{"x":r,"logw":lw},...]}, plus "sigma" for mixtures.

#ifndef SOT_DIST_IO_HPP_
#define SOT_DIST_IO_HPP_

#include <string>

#include "json.hpp"
#include "sot/distribution.hpp"
#include "sot/mixture.hpp"

namespace sot {

nlohmann::json ToJson(const AtomicDistribution& p);
nlohmann::json ToJson(const SmoothedMixture& m);

// Throws SchemaError naming the offending field under `path`.
AtomicDistribution AtomicFromJson(const nlohmann::json& j,
                                  const std::string& path = "");
SmoothedMixture MixtureFromJson(const nlohmann::json& j,
                                const std::string& path = "");

}  // namespace sot

#endif  // SOT_DIST_IO_HPP_
