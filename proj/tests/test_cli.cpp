// Copyright 2026 The trajectory_entropy Authors
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

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace
{

class Cli : public ::testing::Test
{
protected:
  void SetUp() override
  {
    const auto * info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / "te_test_cli" / info->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  // Runs trajent with `args` inside the test directory; returns the exit status.
  int trajent(const std::string & args)
  {
    const std::string cmd = "cd '" + dir_.string() + "' && '" + TE_TRAJENT_PATH + "' " + args +
                            " > stdout.txt 2> stderr.txt";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  }

  std::string read(const std::string & name) const
  {
    std::ifstream in(dir_ / name, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  void write(const std::string & name, const std::string & text) const
  {
    std::ofstream(dir_ / name) << text;
  }

  std::size_t lines(const std::string & name) const
  {
    const auto text = read(name);
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
  }

  fs::path dir_;
};

const char * kExampleA = R"({"version": 1, "dt": 0.1, "agents": [
  {"id": 0, "origin": [0, 0], "modes": [{"confidence": 0.5, "points": [[1, 0]]},
                                        {"confidence": 0.5, "points": [[0, 1]]}]},
  {"id": 1, "origin": [0, 0], "modes": [{"confidence": 1.0, "points": [[3, 0]]}]}]})";

}  // namespace

TEST_F(Cli, RunWritesCsvAndSummary)
{
  ASSERT_EQ(trajent("run --suite generate:scenes=4 --preset synthetic --out a"), 0) << read("stderr.txt");
  EXPECT_TRUE(fs::exists(dir_ / "a" / "run.csv"));
  EXPECT_NE(read("a/summary.csv").find("eval_reduction_pct,"), std::string::npos);
  EXPECT_EQ(read("stdout.txt"), read("a/summary.csv"));
}

TEST_F(Cli, ByteIdenticalReruns)
{
  const std::string args = "--suite generate:scenes=6 --thresholds 220,60 --seed 7";
  ASSERT_EQ(trajent("run " + args + " --out a"), 0);
  ASSERT_EQ(trajent("run " + args + " --out b --jobs 3"), 0);
  EXPECT_EQ(read("a/run.csv"), read("b/run.csv"));
  EXPECT_EQ(read("a/summary.csv"), read("b/summary.csv"));
  ASSERT_EQ(trajent("profile " + args + " --out a"), 0);
  ASSERT_EQ(trajent("profile " + args + " --out b"), 0);
  EXPECT_EQ(read("a/profile.csv"), read("b/profile.csv"));
}

TEST_F(Cli, ProfileRows)
{
  ASSERT_EQ(trajent("profile --suite generate:scenes=4 --levels 5 --no-gate --out p"), 0);
  EXPECT_EQ(lines("p/profile.csv"), 6U);
  ASSERT_EQ(trajent("profile --suite generate:scenes=4 --levels 1 --out q"), 0) << read("stderr.txt");
  EXPECT_EQ(lines("q/profile.csv"), 2U);
}

TEST_F(Cli, NoGateSummary)
{
  ASSERT_EQ(trajent("run --suite generate:scenes=3 --no-gate --out n"), 0);
  EXPECT_NE(read("n/summary.csv").find("eval_reduction_pct,0\n"), std::string::npos);
}

TEST_F(Cli, Sweep)
{
  ASSERT_EQ(trajent("sweep --suite generate:scenes=4 --grid '30/30;40/30;220/60' --out s"), 0)
    << read("stderr.txt");
  EXPECT_EQ(lines("s/sweep.csv"), 4U);
  ASSERT_EQ(trajent("sweep --suite generate:scenes=4 --grid-preset nuplan-threshold-ablation --out t"), 0);
  EXPECT_EQ(lines("t/sweep.csv"), 7U);
}

TEST_F(Cli, AuditVerdicts)
{
  write("mtp.json", kExampleA);
  ASSERT_EQ(trajent("audit mtp.json --threshold 4.2"), 0) << read("stderr.txt");
  EXPECT_EQ(read("stdout.txt"), "agent,entropy,status\n0,0.5,inactive\n1,0,inactive\n");
  ASSERT_EQ(trajent("audit mtp.json --threshold 0.1 --out o"), 0);
  EXPECT_EQ(read("o/audit.csv"), "agent,entropy,status\n0,0.5,active\n1,0,inactive\n");
}

TEST_F(Cli, GenerateThenRun)
{
  ASSERT_EQ(trajent("generate --scenes 5 --seed 3 --out suites/s.json"), 0);
  ASSERT_EQ(trajent("run --suite suites/s.json --seed 3 --out a"), 0) << read("stderr.txt");
  ASSERT_EQ(trajent("run --suite generate:scenes=5 --seed 3 --out b"), 0);
  EXPECT_EQ(read("a/run.csv"), read("b/run.csv"));
}

TEST_F(Cli, ConfigErrorsExitOne)
{
  EXPECT_EQ(trajent("run --suite generate:scenes=2 --levels 3 --thresholds 1"), 1);
  EXPECT_EQ(trajent("run --preset no-such-preset"), 1);
  EXPECT_EQ(trajent("run --normalization cubic"), 1);
  EXPECT_EQ(trajent("run --bogus"), 1);
  EXPECT_EQ(trajent(""), 1);
  EXPECT_EQ(trajent("run --suite generate:scenes=2 --jobs 0"), 1);
}

TEST_F(Cli, InputErrorsExitTwo)
{
  EXPECT_EQ(trajent("run --suite missing.json"), 2);
  EXPECT_NE(read("stderr.txt").find("missing.json"), std::string::npos);
  write("bad.json", "{\"version\": 1, \"seed\": 0, \"scenes\": [");
  EXPECT_EQ(trajent("run --suite bad.json"), 2);
  write("sum.json", R"({"version": 1, "dt": 0.1, "agents": [
    {"id": 0, "origin": [0, 0], "modes": [{"confidence": 0.7, "points": [[1, 0]]},
                                          {"confidence": 0.2, "points": [[0, 1]]}]}]})");
  EXPECT_EQ(trajent("audit sum.json --threshold 1"), 2);
  EXPECT_NE(read("stderr.txt").find("confidence sum"), std::string::npos);
}
