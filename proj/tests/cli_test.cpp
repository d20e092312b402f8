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

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sot_cli_" + std::to_string(getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  static std::string Read(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  // Exit status of `sot args`, with stdout and stderr captured in files.
  int Run(const std::string& args) {
    out_ = (dir_ / "stdout").string();
    err_ = (dir_ / "stderr").string();
    const std::string cmd = std::string(SOT_CLI) + " " + args + " >" + out_ + " 2>" + err_;
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
  std::string out_;
  std::string err_;
};

TEST_F(Cli, MissingConfigFile) {
  EXPECT_EQ(Run("w2 --config " + (dir_ / "absent.json").string()), 2);
  EXPECT_EQ(Run("w2"), 2);
}

TEST_F(Cli, SchemaErrorNamesThePath) {
  const std::string cfg = Write("c.json", R"({"a": {"family": "dirac", "x": 0}, "sigma": 1})");
  EXPECT_EQ(Run("w2 --config " + cfg), 2);
  EXPECT_NE(Read(err_).find("$.b"), std::string::npos) << Read(err_);
  EXPECT_EQ(Run("no-such-command"), 2);
}

TEST_F(Cli, ConstructEmitsAtoms) {
  const std::string cfg = Write("c.json", R"({"family": "two_point", "h": 2, "K": 1})");
  ASSERT_EQ(Run("construct --config " + cfg), 0);
  const nlohmann::json j = nlohmann::json::parse(Read(out_));
  ASSERT_EQ(j["atoms"].size(), 2u);
  EXPECT_NEAR(j["atoms"][1]["logw"].get<double>(), -2.0, 1e-15);
  EXPECT_EQ(j["meta"]["command"], "construct");
}

TEST_F(Cli, W2OfTranslatedGaussians) {
  const std::string cfg = Write(
      "c.json",
      R"({"a": {"family": "dirac", "x": 0}, "b": {"family": "dirac", "x": 3}, "sigma": 1})");
  ASSERT_EQ(Run("w2 --config " + cfg), 0);
  const nlohmann::json j = nlohmann::json::parse(Read(out_));
  EXPECT_NEAR(j["w2sq"].get<double>(), 9.0, 1e-6);
}

TEST_F(Cli, RateScanIsByteIdentical) {
  const std::string cfg = Write(
      "c.json",
      R"({"family": "two_point", "h": 2, "K": 0.5, "sigma": 1, "quantity": "w2sq",
          "n_list": [16, 32, 64], "trials": 6})");
  const std::string a = (dir_ / "a.csv").string();
  const std::string b = (dir_ / "b.csv").string();
  ASSERT_EQ(Run("rate-scan --seed 7 --config " + cfg + " --out " + a), 0) << Read(err_);
  ASSERT_EQ(Run("rate-scan --seed 7 --threads 3 --config " + cfg + " --out " + b), 0);
  const std::string text = Read(a);
  EXPECT_EQ(text, Read(b));
  EXPECT_EQ(text.rfind("# sot ", 0), 0u);
  EXPECT_NE(text.find("# command: rate-scan\n"), std::string::npos);
  EXPECT_NE(text.find("# seed: 7\n"), std::string::npos);
  EXPECT_NE(text.find("# config_hash: "), std::string::npos);
  EXPECT_NE(text.find("\nn,estimate,stderr,trials\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(a + ".fit.json"));
}

TEST_F(Cli, SeedRequiredForRandomCommands) {
  const std::string cfg = Write(
      "c.json",
      R"({"distribution": {"family": "dirac", "x": 0}, "sigma": 1, "n": 32, "delta": 0.1,
          "replications": 4})");
  EXPECT_EQ(Run("concentration --config " + cfg), 2);
  ASSERT_EQ(Run("concentration --seed 3 --config " + cfg), 0);
  EXPECT_NE(Read(out_).find("replication,statistic,bound,violated"), std::string::npos);
}

}  // namespace
