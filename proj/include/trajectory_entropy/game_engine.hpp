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

#ifndef TRAJECTORY_ENTROPY__GAME_ENGINE_HPP_
#define TRAJECTORY_ENTROPY__GAME_ENGINE_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trajectory_entropy/entropy.hpp"
#include "trajectory_entropy/scenarios.hpp"
#include "trajectory_entropy/types.hpp"

namespace trajectory_entropy
{

/**
 * @brief Entropy thresholds for a K-level game.
 *
 * thresholds[k-1] is compared against level-(k-1) entropies right before the
 * level-k decoder, so a K-level game has K-1 thresholds. -infinity disables a
 * gate (nothing can fall strictly below it); +infinity freezes every agent
 * still active at that gate.
 */
struct GateConfig
{
  std::vector<double> thresholds;
  std::size_t levels{1};

  static GateConfig disabled(std::size_t levels);
  static GateConfig uniform(std::size_t levels, double threshold);
  static GateConfig from_thresholds(std::vector<double> thresholds);

  bool is_disabled() const;
  /// Throws ConfigError on wrong length, NaN, or levels == 0.
  void validate() const;
  /// Non-fatal remarks, e.g. a threshold that rises with the level.
  std::vector<std::string> schedule_warnings() const;
};

struct AgentGameState
{
  AgentId agent;
  bool active{true};
  std::optional<std::size_t> frozen_at_level;
  MtpResult current;
  std::optional<double> last_entropy;
};

/**
 * @brief Prediction policy driven by the game engine.
 *
 * level0 sees only the scene. refine at level k receives the agent's own
 * level-(k-1) result and the level-(k-1) results of every other agent (frozen
 * or not); it must not depend on anything else. Both must return results that
 * pass validate_mtp.
 */
class Policy
{
public:
  virtual ~Policy() = default;

  virtual MtpResult level0(const Scene & scene, AgentId agent) const = 0;

  virtual MtpResult refine(
    const Scene & scene, AgentId agent, const MtpResult & own_previous,
    const std::map<AgentId, MtpResult> & others, std::size_t level) const = 0;
};

struct AgentLevelRecord
{
  MtpResult result;
  std::optional<double> entropy;
  // True when the agent was still active when this level's decoder ran.
  bool active_before_level{true};
  // True when the policy produced `result` at this level.
  bool evaluated{false};

  friend bool operator==(const AgentLevelRecord &, const AgentLevelRecord &) = default;
};

struct GateDecision
{
  std::size_t level;  // decoder level the gate precedes
  AgentId agent;
  double entropy;
  double threshold;
  bool frozen;

  friend bool operator==(const GateDecision &, const GateDecision &) = default;
};

struct GameTrace
{
  std::vector<std::map<AgentId, AgentLevelRecord>> levels;
  std::size_t policy_eval_count{0};
  std::vector<GateDecision> gate_log;

  std::size_t level_count() const { return levels.size(); }
  const AgentLevelRecord & at(std::size_t level, AgentId agent) const;
  const MtpResult & final_result(AgentId agent) const;

  friend bool operator==(const GameTrace &, const GameTrace &) = default;
};

struct GateStepResult
{
  std::vector<AgentGameState> states;
  std::vector<AgentId> newly_frozen;
  std::vector<GateDecision> decisions;
};

/// Freezes every active agent whose entropy is strictly below `threshold`.
/// Inactive agents pass through untouched and are not re-scored.
GateStepResult gate_step(
  const std::vector<AgentGameState> & states, double threshold, std::size_t level,
  const EntropyConfig & entropy_config);

/// Level-k game with the entropy gate. Level 0 evaluates every agent; level k
/// first gates with thresholds[k-1] and then refines each still-active agent
/// exactly once against the level-(k-1) snapshot.
///
/// Throws ContractViolation (naming agent and level) when the policy returns
/// an invalid MtpResult.
GameTrace run_level_k_game(
  const Scene & scene, const Policy & policy, const GateConfig & gate,
  const EntropyConfig & entropy_config = {});

/// Same loop with every gate disabled; entropies are still recorded.
GameTrace run_ungated(
  const Scene & scene, const Policy & policy, std::size_t levels,
  const EntropyConfig & entropy_config = {});

}  // namespace trajectory_entropy

#endif  // TRAJECTORY_ENTROPY__GAME_ENGINE_HPP_
