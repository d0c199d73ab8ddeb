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

#ifndef TRAJECTORY_ENTROPY__SCENARIOS_HPP_
#define TRAJECTORY_ENTROPY__SCENARIOS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trajectory_entropy/geometry.hpp"
#include "trajectory_entropy/types.hpp"

namespace trajectory_entropy
{

using LaneId = std::int64_t;

struct AgentInit
{
  AgentId id;
  Point2 position;
  double speed{0.0};    // m/s
  double heading{0.0};  // rad
  LaneId lane{0};
  // Single scripted future (confidence 1) used only for evaluation.
  std::optional<ModeTrajectory> ground_truth;

  friend bool operator==(const AgentInit &, const AgentInit &) = default;
};

struct Scene
{
  std::map<LaneId, Polyline> centerlines;
  std::vector<AgentInit> agents;
  std::size_t horizon{30};
  double dt{0.2};

  /// Throws SemanticError on the first violated invariant.
  void validate() const;
  /// Throws ContractViolation when the id is unknown.
  const AgentInit & agent(AgentId id) const;
  const Polyline & lane_of(const AgentInit & agent) const;

  friend bool operator==(const Scene &, const Scene &) = default;
};

enum class Difficulty { kSimple, kInteractive, kHard };

std::string to_string(Difficulty difficulty);
std::optional<Difficulty> parse_difficulty(std::string_view name);

struct NamedScene
{
  std::string name;
  Difficulty difficulty{Difficulty::kSimple};
  Scene scene;

  friend bool operator==(const NamedScene &, const NamedScene &) = default;
};

struct ScenarioSuite
{
  std::vector<NamedScene> scenes;
  std::uint64_t seed{0};

  /// Names unique, every scene valid. Throws SemanticError.
  void validate() const;

  friend bool operator==(const ScenarioSuite &, const ScenarioSuite &) = default;
};

inline constexpr std::size_t kDefaultHorizon = 30;
inline constexpr double kDefaultDt = 0.2;
inline constexpr double kLaneSpacing = 3.5;

/// Parallel eastbound lanes, one agent per lane in free flow. Ground truth is
/// a constant-speed rollout along the lane centerline.
Scene gen_straight_road(std::size_t n_agents, std::uint64_t seed,
                        std::size_t horizon = kDefaultHorizon, double dt = kDefaultDt);

/// 2..4 straight lanes crossing at the origin. All agents would reach the
/// crossing at the same instant at constant speed; in the ground truth agent 0
/// keeps its speed and every later id slows to pass at least
/// `kIntersectionTimeGap` seconds after its predecessor.
Scene gen_intersection(std::size_t n_agents, std::uint64_t seed,
                       std::size_t horizon = kDefaultHorizon, double dt = kDefaultDt);

inline constexpr double kIntersectionTimeGap = 2.0;
inline constexpr double kGroundTruthClearance = 3.0;

/// Suite of `n_scenes` scenes; round(straight_fraction * n_scenes) are straight
/// roads, the rest intersections. Scene i is generated from a seed derived from
/// (seed, i) so the suite is a pure function of its arguments.
ScenarioSuite gen_mixed_suite(std::size_t n_scenes, double straight_fraction, std::uint64_t seed,
                              std::size_t horizon = kDefaultHorizon, double dt = kDefaultDt);

// File I/O. Formats are JSON documents; see README for the schemas.
Scene load_scene(const std::filesystem::path & path);
void save_scene(const Scene & scene, const std::filesystem::path & path);
Scene parse_scene(std::string_view text);
std::string serialize_scene(const Scene & scene);

ScenarioSuite load_suite(const std::filesystem::path & path);
void save_suite(const ScenarioSuite & suite, const std::filesystem::path & path);

/// Third-party predictions keyed by agent. Every result must pass validate_mtp;
/// otherwise SemanticError listing the violations.
std::map<AgentId, MtpResult> load_external_mtp(const std::filesystem::path & path);
std::map<AgentId, MtpResult> parse_external_mtp(std::string_view text);
std::string serialize_external_mtp(const std::map<AgentId, MtpResult> & results);

}  // namespace trajectory_entropy

#endif  // TRAJECTORY_ENTROPY__SCENARIOS_HPP_
