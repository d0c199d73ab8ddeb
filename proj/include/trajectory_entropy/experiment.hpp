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

#ifndef TRAJECTORY_ENTROPY__EXPERIMENT_HPP_
#define TRAJECTORY_ENTROPY__EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trajectory_entropy/entropy.hpp"
#include "trajectory_entropy/game_engine.hpp"
#include "trajectory_entropy/metrics.hpp"
#include "trajectory_entropy/policies.hpp"
#include "trajectory_entropy/scenarios.hpp"

namespace trajectory_entropy
{

// ---------------------------------------------------------------- presets

struct ThresholdPreset
{
  std::string name;
  std::string source;  // benchmark and prediction horizon the values come from
  std::vector<double> thresholds;

  friend bool operator==(const ThresholdPreset &, const ThresholdPreset &) = default;
};

struct ThresholdGrid
{
  std::string name;
  std::string source;
  std::vector<std::vector<double>> schedules;

  friend bool operator==(const ThresholdGrid &, const ThresholdGrid &) = default;
};

struct PresetCatalog
{
  std::vector<ThresholdPreset> presets;
  std::vector<ThresholdGrid> grids;

  const ThresholdPreset * find_preset(std::string_view name) const;
  const ThresholdGrid * find_grid(std::string_view name) const;

  friend bool operator==(const PresetCatalog &, const PresetCatalog &) = default;
};

/// Compiled-in copy of config/presets.json.
const PresetCatalog & builtin_presets();
PresetCatalog load_presets(const std::filesystem::path & path);
std::string serialize_presets(const PresetCatalog & catalog);

// ---------------------------------------------------------------- configuration

struct RunConfig
{
  // Suite file path, or "generate:key=value,..." (keys: scenes, straight, horizon, dt).
  std::string suite{"generate:scenes=10"};
  std::size_t levels{3};
  std::vector<double> thresholds;
  bool gate_enabled{true};
  EntropyConfig entropy;
  FanPolicyParams policy;
  std::uint64_t seed{0};
  std::filesystem::path out_dir{"out"};
  std::size_t jobs{1};
  double miss_threshold{kDefaultMissThreshold};
  double collision_radius{kDefaultCollisionRadius};

  /// Gate for the gated run (disabled when gate_enabled is false).
  GateConfig gate() const;
  /// Throws ConfigError.
  void validate() const;
};

/// Parses "a,b,c" into reals; "inf"/"-inf" accepted. Throws ConfigError.
std::vector<double> parse_threshold_list(std::string_view text);
/// Parses "30/30;40/30" (schedules separated by ';', values by '/' or ',').
std::vector<std::vector<double>> parse_threshold_grid(std::string_view text);
std::string format_thresholds(const std::vector<double> & thresholds);

/// Generates or loads the suite named by `spec`; generated suites use `seed`.
ScenarioSuite resolve_suite(const std::string & spec, std::uint64_t seed);

// ---------------------------------------------------------------- execution

struct SceneOutcome
{
  std::string name;
  Difficulty difficulty{Difficulty::kSimple};
  Scene scene;
  GameTrace gated;
  GameTrace ungated;
};

/// Gated and ungated games on every scene, up to `config.jobs` scenes at a
/// time. Output order follows the suite regardless of completion order.
std::vector<SceneOutcome> run_suite(const ScenarioSuite & suite, const RunConfig & config);

/// Displacement metrics of one agent's level result against its ground truth;
/// collision compares argmax-confidence modes of all agents at that level.
std::optional<EvalMetrics> evaluate_agent(
  const Scene & scene, const GameTrace & trace, std::size_t level, AgentId agent,
  double miss_threshold, double collision_radius);

struct SuiteSummary
{
  std::size_t scenes{0};
  std::size_t agents{0};
  std::size_t evals_gated{0};
  std::size_t evals_ungated{0};
  std::size_t frozen_agents{0};
  double eval_reduction_pct{0.0};
  // Means over agents with ground truth, final level.
  double min_ade_gated{0.0};
  double min_ade_ungated{0.0};
  double min_fde_gated{0.0};
  double min_fde_ungated{0.0};
  double miss_rate_gated{0.0};
  double miss_rate_ungated{0.0};
  double collision_rate_gated{0.0};
  double collision_rate_ungated{0.0};
};

SuiteSummary summarize(const std::vector<SceneOutcome> & outcomes, const RunConfig & config);

struct LevelProfile
{
  std::size_t level;
  double mean_gated;
  double std_gated;
  double mean_ungated;
  double std_ungated;
  double active_fraction_gated;
};

std::vector<LevelProfile> entropy_profile(const std::vector<SceneOutcome> & outcomes);

struct SweepRow
{
  std::vector<double> thresholds;
  double min_ade;
  double miss_rate;
  double eval_reduction_pct;
  std::size_t evals_gated;
  std::size_t evals_ungated;
};

/// One row per schedule, every schedule run on the same suite.
std::vector<SweepRow> threshold_sweep(
  const ScenarioSuite & suite, const RunConfig & base,
  const std::vector<std::vector<double>> & grid);

struct AuditRow
{
  AgentId agent;
  double entropy;
  bool active;
};

std::vector<AuditRow> audit(
  const std::map<AgentId, MtpResult> & predictions, const EntropyConfig & config,
  double threshold);

// ---------------------------------------------------------------- CSV output

/// Reals with 9 significant digits; "inf"/"-inf" for infinities.
std::string format_real(double value);

std::string run_csv(const std::vector<SceneOutcome> & outcomes, const RunConfig & config);
std::string summary_csv(const SuiteSummary & summary, const RunConfig & config);
std::string profile_csv(const std::vector<LevelProfile> & rows);
std::string sweep_csv(const std::vector<SweepRow> & rows);
std::string audit_csv(const std::vector<AuditRow> & rows);

void write_text(const std::filesystem::path & path, const std::string & text);

}  // namespace trajectory_entropy

#endif  // TRAJECTORY_ENTROPY__EXPERIMENT_HPP_
