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

#ifndef SOT_COMMON_HPP_
#define SOT_COMMON_HPP_

#include <limits>
#include <stdexcept>
#include <string>

namespace sot {

inline constexpr const char* kVersion = "0.3.0";

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Bad input: violated precondition or malformed value.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what)
      : std::invalid_argument(what) {}
};

// Config or JSON input that does not match the expected schema.
class SchemaError : public InvalidArgument {
 public:
  SchemaError(const std::string& path, const std::string& what)
      : InvalidArgument(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// A numeric routine failed to reach its tolerance. Carries the last estimate.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double partial)
      : std::runtime_error(what), partial_(partial) {}
  double partial() const { return partial_; }

 private:
  double partial_;
};

}  // namespace sot

#endif  // SOT_COMMON_HPP_
