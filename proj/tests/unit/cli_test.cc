// Copyright 2026 The ratnear Authors
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

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"

namespace ratnear::cli {
namespace {

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"ratnear"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  std::ostringstream out, err;
  Invocation r;
  r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const char* name) { return std::string(RATNEAR_TEST_DATA) + "/" + name; }

std::string without_elapsed(const std::string& report) {
  std::istringstream in(report);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.rfind("elapsed_s:", 0) == 0) continue;
    out += line + "\n";
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"count", "--Q", "5"}).code, 2);
  EXPECT_EQ(invoke({"count", "--matrix", data("golden.mat"), "--Q", "5", "--delta", "abc"}).code, 2);
  EXPECT_EQ(invoke({"count", "--matrix", data("missing.mat"), "--Q", "5", "--delta", "0.1"}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(CliTest, CountReport) {
  Invocation r = invoke({"count", "--matrix", data("golden.mat"), "--Q", "5", "--delta", "0.6"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("format_version: ratnear-report 1\n", 0), 0u);
  EXPECT_NE(r.out.find("count_certain: 81\n"), std::string::npos);
  EXPECT_NE(r.out.find("count.delta: 0.6\n"), std::string::npos);
  EXPECT_NE(r.out.find("status: ok\n"), std::string::npos);
}

TEST(CliTest, BudgetExceeded) {
  Invocation r = invoke({"count", "--matrix", data("golden.mat"), "--Q", "50000", "--delta", "0.1",
                  "--budget", "1000"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("budget"), std::string::npos);
}

TEST(CliTest, GlobalFlagsAfterSubcommand) {
  Invocation a = invoke({"--workers", "2", "count", "--matrix", data("golden.mat"), "--Q", "9",
                  "--delta", "0.1"});
  Invocation b = invoke({"count", "--matrix", data("golden.mat"), "--Q", "9", "--delta", "0.1",
                  "--workers", "2"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(without_elapsed(a.out), without_elapsed(b.out));
}

TEST(CliTest, ReportsAreDeterministic) {
  const std::string csv1 = ::testing::TempDir() + "ratnear_cli_1.csv";
  const std::string csv2 = ::testing::TempDir() + "ratnear_cli_2.csv";
  Invocation a = invoke({"sieve-check", "--mode", "ls", "--instances", "20", "--seed", "9", "--csv", csv1});
  Invocation b = invoke({"sieve-check", "--mode", "ls", "--instances", "20", "--seed", "9", "--workers",
                  "4", "--csv", csv2});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(slurp(csv1), slurp(csv2));
  std::string first_line = slurp(csv1).substr(0, slurp(csv1).find('\n'));
  EXPECT_EQ(first_line.rfind("# ", 0), 0u);
  EXPECT_NE(slurp(csv1).find("instance,seed,k,R,box_size,lhs,rhs,ratio,verdict"), std::string::npos);
  std::remove(csv1.c_str());
  std::remove(csv2.c_str());
}

TEST(CliTest, ExponentInfiniteForRational) {
  Invocation r = invoke({"exponent", "--matrix", data("rational_1x1.mat"), "--qmax", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("infinite: true"), std::string::npos) << r.out;
}

TEST(CliTest, ClassifyProfile) {
  Invocation r = invoke({"classify", "--profile", data("typical.profile")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("[verdicts]"), std::string::npos);
  EXPECT_NE(r.out.find("extremal: Yes"), std::string::npos) << r.out;
}

TEST(CliTest, WitnessMode) {
  Invocation r = invoke({"covering", "--mode", "witness", "--matrix", data("golden.mat"), "--Q", "100",
                  "--delta", "0.15", "--x", "0.5"});
  EXPECT_EQ(r.code, 0) << r.err << r.out;
}

TEST(CliTest, ConfigFile) {
  const std::string cfg = ::testing::TempDir() + "ratnear_cli.toml";
  {
    std::ofstream f(cfg);
    f << "[count]\nmatrix = \"" << data("golden.mat") << "\"\nQ = 5\ndelta = \"0.6\"\n";
  }
  Invocation r = invoke({"--config", cfg, "count"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("count_certain: 81"), std::string::npos) << r.out;
  std::remove(cfg.c_str());
}

}  // namespace
}  // namespace ratnear::cli
