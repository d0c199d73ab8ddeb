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

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "trajectory_entropy/errors.hpp"
#include "trajectory_entropy/experiment.hpp"

namespace te = trajectory_entropy;

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::vector<std::string>> parse_csv(const std::string & text)
{
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) {
      cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
      cells.emplace_back();
    }
    rows.push_back(cells);
  }
  return rows;
}

te::RunConfig config(std::size_t levels, std::vector<double> thresholds)
{
  te::RunConfig c;
  c.levels = levels;
  c.thresholds = std::move(thresholds);
  return c;
}

std::size_t agent_count(const te::ScenarioSuite & suite)
{
  std::size_t n = 0;
  for (const auto & s : suite.scenes) {
    n += s.scene.agents.size();
  }
  return n;
}

}  // namespace

// ---------------------------------------------------------------- presets

TEST(Presets, ShippedFileMatchesBuiltin)
{
  EXPECT_EQ(te::load_presets(TE_PRESETS_JSON), te::builtin_presets());
}

TEST(Presets, PublishedSchedules)
{
  const auto & c = te::builtin_presets();
  EXPECT_EQ(c.find_preset("womd-prediction")->thresholds, (std::vector<double>{4.3, 4.2, 4.1}));
  EXPECT_EQ(c.find_preset("womd-open-loop")->thresholds, (std::vector<double>{0.8, 0.75, 0.7, 0.65}));
  EXPECT_EQ(c.find_preset("nuplan-prediction")->thresholds, (std::vector<double>{40.0, 30.0}));
  EXPECT_EQ(c.find_preset("nuplan-planning")->thresholds, (std::vector<double>{30.0, 28.0}));
  EXPECT_EQ(c.find_grid("nuplan-threshold-ablation")->schedules.size(), 6U);
  EXPECT_EQ(c.find_preset("nope"), nullptr);
}

TEST(Presets, MissingFile)
{
  EXPECT_THROW(te::load_presets("/nonexistent/presets.json"), te::IoError);
}

// ---------------------------------------------------------------- parsing

TEST(Thresholds, Parse)
{
  EXPECT_EQ(te::parse_threshold_list("4.3,4.2, 4.1"), (std::vector<double>{4.3, 4.2, 4.1}));
  EXPECT_EQ(te::parse_threshold_list("30/25"), (std::vector<double>{30.0, 25.0}));
  EXPECT_EQ(te::parse_threshold_list("inf,-inf"), (std::vector<double>{kInf, -kInf}));
  EXPECT_EQ(te::parse_threshold_list("1e1"), (std::vector<double>{10.0}));
  EXPECT_TRUE(te::parse_threshold_list("").empty());
  EXPECT_THROW(te::parse_threshold_list("4.3,x"), te::ConfigError);
  EXPECT_THROW(te::parse_threshold_list("4.3,,4"), te::ConfigError);
  EXPECT_THROW(te::parse_threshold_list("nan"), te::ConfigError);
}

TEST(Thresholds, Grid)
{
  const auto g = te::parse_threshold_grid("30/30;40/30");
  ASSERT_EQ(g.size(), 2U);
  EXPECT_EQ(g[1], (std::vector<double>{40.0, 30.0}));
  EXPECT_THROW(te::parse_threshold_grid(" ; "), te::ConfigError);
  EXPECT_EQ(te::format_thresholds({40.0, 30.0}), "40/30");
  EXPECT_EQ(te::format_thresholds({}), "none");
}

TEST(RunConfig, Validation)
{
  EXPECT_NO_THROW(config(3, {1, 2}).validate());
  EXPECT_THROW(config(3, {1}).validate(), te::ConfigError);
  EXPECT_THROW(config(0, {}).validate(), te::ConfigError);
  auto c = config(3, {});
  c.gate_enabled = false;
  EXPECT_NO_THROW(c.validate());
  EXPECT_TRUE(c.gate().is_disabled());
  c.jobs = 0;
  EXPECT_THROW(c.validate(), te::ConfigError);
}

TEST(Suite, GeneratorSpec)
{
  const auto s = te::resolve_suite("generate:scenes=8,straight=0.5,horizon=20,dt=0.1", 3);
  ASSERT_EQ(s.scenes.size(), 8U);
  EXPECT_EQ(s.scenes[0].scene.horizon, 20U);
  EXPECT_EQ(s, te::gen_mixed_suite(8, 0.5, 3, 20, 0.1));
  EXPECT_THROW(te::resolve_suite("generate:scenes", 0), te::ConfigError);
  EXPECT_THROW(te::resolve_suite("generate:lanes=3", 0), te::ConfigError);
  EXPECT_THROW(te::resolve_suite("/nonexistent/suite.json", 0), te::IoError);
}

TEST(FormatReal, NineDigits)
{
  EXPECT_EQ(te::format_real(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(te::format_real(2.5), "2.5");
  EXPECT_EQ(te::format_real(kInf), "inf");
  EXPECT_EQ(te::format_real(-kInf), "-inf");
}

// ---------------------------------------------------------------- runs

TEST(RunSuite, CsvShape)
{
  const auto suite = te::gen_mixed_suite(10, 0.7, 0);
  const auto cfg = config(3, {220, 60});
  const auto rows = parse_csv(te::run_csv(te::run_suite(suite, cfg), cfg));
  ASSERT_EQ(rows.size(), 1 + agent_count(suite) * 3);
  EXPECT_EQ(rows[0].size(), 11U);
  EXPECT_EQ(rows[0][0], "scene");
  EXPECT_EQ(rows[0][10], "eval_count_ungated");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].size(), 11U);
  }
}

TEST(RunSuite, InfiniteThresholdsSaveAllRefinement)
{
  const auto suite = te::gen_mixed_suite(6, 0.5, 1);
  for (std::size_t K : {2U, 3U, 5U}) {
    const auto cfg = config(K, std::vector<double>(K - 1, kInf));
    const auto s = te::summarize(te::run_suite(suite, cfg), cfg);
    EXPECT_EQ(s.evals_gated, agent_count(suite));
    EXPECT_EQ(s.evals_ungated, agent_count(suite) * K);
    EXPECT_NEAR(s.eval_reduction_pct, 100.0 * static_cast<double>(K - 1) / static_cast<double>(K), 1e-9);
  }
}

TEST(RunSuite, NoGateNoReduction)
{
  auto cfg = config(3, {});
  cfg.gate_enabled = false;
  const auto s = te::summarize(te::run_suite(te::gen_mixed_suite(6, 0.5, 1), cfg), cfg);
  EXPECT_EQ(s.eval_reduction_pct, 0.0);
  EXPECT_EQ(s.evals_gated, s.evals_ungated);
  EXPECT_EQ(s.min_ade_gated, s.min_ade_ungated);
}

TEST(RunSuite, SummaryReductionMatchesRows)
{
  const auto suite = te::gen_mixed_suite(12, 0.7, 9);
  const auto cfg = config(3, {220, 60});
  const auto outcomes = te::run_suite(suite, cfg);
  const auto rows = parse_csv(te::run_csv(outcomes, cfg));
  std::size_t gated = 0;
  std::size_t ungated = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    gated += std::stoul(rows[i][9]);
    ungated += std::stoul(rows[i][10]);
  }
  const auto s = te::summarize(outcomes, cfg);
  EXPECT_EQ(gated, s.evals_gated);
  EXPECT_EQ(ungated, s.evals_ungated);
  EXPECT_NEAR(s.eval_reduction_pct, 100.0 * (1.0 - static_cast<double>(gated) / ungated), 1e-9);
}

TEST(RunSuite, ParallelMatchesSequential)
{
  const auto suite = te::gen_mixed_suite(12, 0.6, 5);
  auto cfg = config(3, {220, 60});
  const auto seq = te::run_csv(te::run_suite(suite, cfg), cfg);
  cfg.jobs = 4;
  EXPECT_EQ(te::run_csv(te::run_suite(suite, cfg), cfg), seq);
}

TEST(Profile, Shape)
{
  const auto suite = te::gen_mixed_suite(6, 0.5, 2);
  const auto one = te::entropy_profile(te::run_suite(suite, config(1, {})));
  EXPECT_EQ(one.size(), 1U);
  auto cfg = config(5, {});
  cfg.gate_enabled = false;
  const auto five = te::entropy_profile(te::run_suite(suite, cfg));
  ASSERT_EQ(five.size(), 5U);
  for (const auto & r : five) {
    EXPECT_EQ(r.mean_gated, r.mean_ungated);
    EXPECT_EQ(r.active_fraction_gated, 1.0);
  }
  EXPECT_EQ(parse_csv(te::profile_csv(five)).size(), 6U);
}

TEST(Sweep, RowsAndFirstGateMonotonicity)
{
  const auto suite = te::gen_mixed_suite(10, 0.7, 4);
  const auto & grid = te::builtin_presets().find_grid("nuplan-threshold-ablation")->schedules;
  const auto rows = te::threshold_sweep(suite, config(3, {0, 0}), grid);
  ASSERT_EQ(rows.size(), 6U);
  EXPECT_EQ(rows[0].evals_ungated, rows[5].evals_ungated);

  // Lower first-gate thresholds never save more (second gate held fixed).
  const auto mono = te::threshold_sweep(
    suite, config(2, {0}), {{400.0}, {300.0}, {250.0}, {200.0}, {150.0}, {0.0}});
  for (std::size_t i = 1; i < mono.size(); ++i) {
    EXPECT_LE(mono[i].eval_reduction_pct, mono[i - 1].eval_reduction_pct);
  }
  EXPECT_EQ(te::threshold_sweep(suite, config(3, {0, 0}), {{220, 60}}).size(), 1U);
  EXPECT_THROW(te::threshold_sweep(suite, config(3, {0, 0}), {}), te::ConfigError);
}

// ---------------------------------------------------------------- audit

TEST(Audit, Verdicts)
{
  std::map<te::AgentId, te::MtpResult> preds;
  te::MtpResult a;
  a.modes = {{{{1, 0}}, 0.5}, {{{0, 1}}, 0.5}};
  te::MtpResult single;
  single.modes = {{{{1, 0}}, 1.0}};
  preds[te::AgentId{1}] = a;
  preds[te::AgentId{2}] = single;
  const auto strict = te::audit(preds, {}, 4.2);
  ASSERT_EQ(strict.size(), 2U);
  EXPECT_NEAR(strict[0].entropy, 0.5, 1e-12);
  EXPECT_FALSE(strict[0].active);
  EXPECT_FALSE(strict[1].active);
  EXPECT_EQ(strict[1].entropy, 0.0);
  const auto loose = te::audit(preds, {}, 0.1);
  EXPECT_TRUE(loose[0].active);
  EXPECT_FALSE(loose[1].active);
  EXPECT_EQ(te::audit_csv(strict), "agent,entropy,status\n1,0.5,inactive\n2,0,inactive\n");
}
