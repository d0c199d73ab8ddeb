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
#include <map>

#include "support/generators.hpp"
#include "trajectory_entropy/entropy.hpp"
#include "trajectory_entropy/errors.hpp"
#include "trajectory_entropy/experiment.hpp"
#include "trajectory_entropy/policies.hpp"
#include "trajectory_entropy/scenarios.hpp"

namespace te = trajectory_entropy;

namespace
{

// First gate of the calibrated synthetic schedule.
double simple_threshold()
{
  return te::builtin_presets().find_preset("synthetic")->thresholds.front();
}

double entropy(const te::MtpResult & r) { return te::trajectory_entropy(r).value; }

te::Scene lone_agent_scene()
{
  auto s = te::gen_straight_road(1, 3);
  return s;
}

// Two agents on perpendicular lanes reaching the origin at the same step.
te::Scene crossing_scene()
{
  te::Scene s;
  s.centerlines[0] = {{-200, 0}, {0, 0}, {200, 0}};
  s.centerlines[1] = {{0, -200}, {0, 0}, {0, 200}};
  te::AgentInit a;
  a.id = te::AgentId{0};
  a.position = {-20, 0};
  a.speed = 10;
  a.heading = 0;
  a.lane = 0;
  te::AgentInit b;
  b.id = te::AgentId{1};
  b.position = {0, -20};
  b.speed = 10;
  b.heading = std::numbers::pi / 2;
  b.lane = 1;
  s.agents = {a, b};
  return s;
}

std::map<te::AgentId, te::MtpResult> level0_all(const te::Scene & s, const te::FanPolicyParams & p)
{
  std::map<te::AgentId, te::MtpResult> out;
  for (const auto & a : s.agents) {
    out[a.id] = te::fan_level0(s, a.id, p);
  }
  return out;
}

std::map<te::AgentId, te::MtpResult> without(std::map<te::AgentId, te::MtpResult> m, te::AgentId id)
{
  m.erase(id);
  return m;
}

}  // namespace

TEST(FanPolicyParams, Validation)
{
  te::FanPolicyParams p;
  EXPECT_NO_THROW(p.validate());
  p.contraction_rate = 0.0;
  EXPECT_THROW(p.validate(), te::ConfigError);
  p.contraction_rate = 1.0;
  EXPECT_NO_THROW(p.validate());
  p.contraction_rate = 1.5;
  EXPECT_THROW(p.validate(), te::ConfigError);
  p = {};
  p.mode_count = 7;
  EXPECT_THROW(p.validate(), te::ConfigError);
  p = {};
  p.confidence_temperature = 0.0;
  EXPECT_THROW(p.validate(), te::ConfigError);
}

TEST(FanLevel0, SingleMode)
{
  te::FanPolicyParams p;
  p.mode_count = 1;
  const auto s = te::gen_intersection(2, 1);
  const auto r = te::fan_level0(s, te::AgentId{0}, p);
  ASSERT_EQ(r.mode_count(), 1U);
  EXPECT_EQ(r.modes[0].confidence, 1.0);
  EXPECT_EQ(entropy(r), 0.0);
}

TEST(FanLevel0, StraightRoadBelowSimpleCalibration)
{
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto s = te::gen_straight_road(3, seed);
    for (const auto & a : s.agents) {
      EXPECT_LT(entropy(te::fan_level0(s, a.id, {})), simple_threshold()) << "seed " << seed;
    }
  }
}

TEST(FanLevel0, IntersectionAboveSimpleCalibration)
{
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto s = te::gen_intersection(2 + seed % 3, seed);
    for (const auto & a : s.agents) {
      EXPECT_GT(entropy(te::fan_level0(s, a.id, {})), simple_threshold()) << "seed " << seed;
    }
  }
}

TEST(FanLevel0, ValidAndCentered)
{
  const auto s = te::gen_straight_road(4, 8);
  for (const auto & a : s.agents) {
    const auto r = te::fan_level0(s, a.id, {});
    EXPECT_TRUE(te::validate_mtp(r).ok());
    EXPECT_EQ(r.origin, a.position);
    EXPECT_EQ(r.horizon(), s.horizon);
    EXPECT_EQ(r.dt, s.dt);
    // centerline-hugging modes carry the most weight
    EXPECT_EQ(te::best_mode_index(r) / 2, 0U);
  }
}

TEST(FanLevel0, MissingLaneIsConfigError)
{
  auto s = te::gen_straight_road(1, 1);
  s.agents[0].lane = 99;
  EXPECT_THROW(te::fan_level0(s, te::AgentId{0}, {}), te::ConfigError);
}

TEST(FanLevel0, DeterministicPerSeed)
{
  const auto s = te::gen_intersection(3, 2);
  te::FanPolicyParams p;
  p.seed = 17;
  EXPECT_EQ(te::fan_level0(s, te::AgentId{1}, p), te::fan_level0(s, te::AgentId{1}, p));
  te::FanPolicyParams q = p;
  q.seed = 18;
  EXPECT_NE(te::fan_level0(s, te::AgentId{1}, p), te::fan_level0(s, te::AgentId{1}, q));
}

TEST(ContractionRefine, LoneAgentEntropyDrops)
{
  const auto s = lone_agent_scene();
  auto r = te::fan_level0(s, te::AgentId{0}, {});
  for (std::size_t level = 1; level < 6; ++level) {
    const auto next = te::contraction_refine(s, te::AgentId{0}, r, {}, level, {});
    EXPECT_TRUE(te::validate_mtp(next).ok());
    EXPECT_LT(entropy(next), entropy(r));
    r = next;
  }
}

TEST(ContractionRefineProperty, ConflictFreeEntropyDrops)
{
  // Random forward-moving fans; a lone agent never has a conflict.
  const auto s = lone_agent_scene();
  gen::Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    auto r = gen::mtp(rng, {.max_modes = 6, .max_horizon = 30, .min_modes = 2});
    const double before = entropy(r);
    te::FanPolicyParams p;
    p.contraction_rate = rng.uniform(0.3, 0.8);
    const auto after = te::contraction_refine(s, te::AgentId{0}, r, {}, 1, p);
    EXPECT_LT(entropy(after), before) << "trial " << trial;
  }
}

TEST(ContractionRefine, UnitRateKeepsGeometry)
{
  const auto s = lone_agent_scene();
  const auto r = te::fan_level0(s, te::AgentId{0}, {});
  te::FanPolicyParams p;
  p.contraction_rate = 1.0;
  const auto out = te::contraction_refine(s, te::AgentId{0}, r, {}, 1, p);
  ASSERT_EQ(out.mode_count(), r.mode_count());
  for (std::size_t j = 0; j < r.mode_count(); ++j) {
    EXPECT_EQ(out.modes[j].points, r.modes[j].points);
    EXPECT_NEAR(out.modes[j].confidence, r.modes[j].confidence, 1e-15);
  }
}

TEST(ContractionRefine, SharpensConfidences)
{
  const auto s = lone_agent_scene();
  const auto r = te::fan_level0(s, te::AgentId{0}, {});
  const auto out = te::contraction_refine(s, te::AgentId{0}, r, {}, 1, {});
  const std::size_t best = te::best_mode_index(r);
  EXPECT_EQ(te::best_mode_index(out), best);
  EXPECT_GT(out.modes[best].confidence, r.modes[best].confidence);
  // c' proportional to c^2 at rate 0.5
  double norm = 0.0;
  for (const auto & m : r.modes) {
    norm += m.confidence * m.confidence;
  }
  for (std::size_t j = 0; j < r.mode_count(); ++j) {
    EXPECT_NEAR(out.modes[j].confidence, r.modes[j].confidence * r.modes[j].confidence / norm, 1e-12);
  }
}

TEST(ContractionRefine, CrossingLowerPriorityYields)
{
  const auto s = crossing_scene();
  const te::FanPolicyParams p;
  const auto l0 = level0_all(s, p);
  const auto a = te::contraction_refine(s, te::AgentId{0}, l0.at(te::AgentId{0}),
                                        without(l0, te::AgentId{0}), 1, p);
  const auto b = te::contraction_refine(s, te::AgentId{1}, l0.at(te::AgentId{1}),
                                        without(l0, te::AgentId{1}), 1, p);
  // Agent 0 has priority: its modes are pure contraction (no delay), so none
  // is pinned at the origin.
  for (const auto & m : a.modes) {
    EXPECT_NE(m.points[0], a.origin);
  }
  // Every mode of agent 1 stays clear of agent 0's level-0 best mode.
  const auto & lead = l0.at(te::AgentId{0}).modes[te::best_mode_index(l0.at(te::AgentId{0}))].points;
  bool delayed = false;
  for (const auto & m : b.modes) {
    delayed = delayed || m.points[0] == b.origin;
    double closest = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < lead.size(); ++t) {
      closest = std::min(closest, te::distance(m.points[t], lead[t]));
    }
    EXPECT_GE(closest, p.conflict_radius);
  }
  EXPECT_TRUE(delayed);
}

TEST(ContractionRefine, ExactlyOneOfTwoYields)
{
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto s = te::gen_intersection(2, seed);
    const te::FanPolicyParams p;
    const auto l0 = level0_all(s, p);
    int yielding = 0;
    for (const auto & agent : s.agents) {
      te::FanPolicyParams no_conflict = p;
      no_conflict.conflict_radius = 1e-9;
      const auto plain = te::contraction_refine(
        s, agent.id, l0.at(agent.id), without(l0, agent.id), 1, no_conflict);
      const auto out = te::contraction_refine(s, agent.id, l0.at(agent.id), without(l0, agent.id), 1, p);
      yielding += out == plain ? 0 : 1;
    }
    EXPECT_EQ(yielding, 1) << "seed " << seed;
  }
}

TEST(ContractionRefine, MissingOtherAgent)
{
  const auto s = crossing_scene();
  const auto l0 = level0_all(s, {});
  EXPECT_THROW(te::contraction_refine(s, te::AgentId{1}, l0.at(te::AgentId{1}), {}, 1, {}),
               te::ContractViolation);
}

TEST(ContractionRefine, OutputsValidOnSuite)
{
  const auto suite = te::gen_mixed_suite(15, 0.5, 4);
  const te::FanPolicy policy;
  for (const auto & named : suite.scenes) {
    const auto trace = te::run_ungated(named.scene, policy, 5);
    for (const auto & level : trace.levels) {
      for (const auto & [id, rec] : level) {
        EXPECT_TRUE(te::validate_mtp(rec.result).ok());
      }
    }
  }
}

TEST(BestModeIndex, TiesGoToLowestIndex)
{
  te::MtpResult r;
  r.modes = {{{{0, 0}}, 0.25}, {{{1, 0}}, 0.375}, {{{2, 0}}, 0.375}};
  EXPECT_EQ(te::best_mode_index(r), 1U);
}
