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

#include "trajectory_entropy/game_engine.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "trajectory_entropy/errors.hpp"

namespace trajectory_entropy
{
namespace
{

std::string agent_level(AgentId agent, std::size_t level)
{
  return "agent " + std::to_string(agent.value) + " level " + std::to_string(level);
}

}  // namespace

GateConfig GateConfig::disabled(std::size_t levels)
{
  GateConfig gate;
  gate.levels = levels;
  gate.thresholds.assign(levels > 0 ? levels - 1 : 0, -std::numeric_limits<double>::infinity());
  return gate;
}

GateConfig GateConfig::uniform(std::size_t levels, double threshold)
{
  GateConfig gate;
  gate.levels = levels;
  gate.thresholds.assign(levels > 0 ? levels - 1 : 0, threshold);
  return gate;
}

GateConfig GateConfig::from_thresholds(std::vector<double> thresholds)
{
  GateConfig gate;
  gate.levels = thresholds.size() + 1;
  gate.thresholds = std::move(thresholds);
  return gate;
}

bool GateConfig::is_disabled() const
{
  for (double t : thresholds) {
    if (!(std::isinf(t) && t < 0.0)) {
      return false;
    }
  }
  return true;
}

void GateConfig::validate() const
{
  if (levels == 0) {
    throw ConfigError("game needs at least one level");
  }
  if (thresholds.size() != levels - 1) {
    throw ConfigError(
      "expected " + std::to_string(levels - 1) + " thresholds for " + std::to_string(levels) +
      " levels, got " + std::to_string(thresholds.size()));
  }
  for (double t : thresholds) {
    if (std::isnan(t)) {
      throw ConfigError("threshold is NaN");
    }
  }
}

std::vector<std::string> GateConfig::schedule_warnings() const
{
  std::vector<std::string> out;
  for (std::size_t i = 1; i < thresholds.size(); ++i) {
    if (thresholds[i] > thresholds[i - 1]) {
      std::ostringstream msg;
      msg << "threshold for level " << i + 1 << " (" << thresholds[i]
          << ") is higher than for level " << i << " (" << thresholds[i - 1]
          << "); deeper levels usually warrant stricter gates";
      out.push_back(msg.str());
    }
  }
  return out;
}

const AgentLevelRecord & GameTrace::at(std::size_t level, AgentId agent) const
{
  if (level >= levels.size()) {
    throw ContractViolation("trace has no level " + std::to_string(level));
  }
  auto it = levels[level].find(agent);
  if (it == levels[level].end()) {
    throw ContractViolation("trace has no " + agent_level(agent, level));
  }
  return it->second;
}

const MtpResult & GameTrace::final_result(AgentId agent) const
{
  if (levels.empty()) {
    throw ContractViolation("empty trace");
  }
  return at(levels.size() - 1, agent).result;
}

GateStepResult gate_step(
  const std::vector<AgentGameState> & states, double threshold, std::size_t level,
  const EntropyConfig & entropy_config)
{
  if (std::isnan(threshold)) {
    throw ConfigError("threshold is NaN");
  }
  GateStepResult out;
  out.states = states;
  for (auto & state : out.states) {
    if (!state.active) {
      continue;
    }
    require_valid_mtp(state.current, "gate before " + agent_level(state.agent, level));
    const double entropy = trajectory_entropy(state.current, entropy_config).value;
    state.last_entropy = entropy;
    const bool freeze = entropy < threshold;
    if (freeze) {
      state.active = false;
      state.frozen_at_level = level;
      out.newly_frozen.push_back(state.agent);
    }
    out.decisions.push_back({level, state.agent, entropy, threshold, freeze});
  }
  return out;
}

GameTrace run_level_k_game(
  const Scene & scene, const Policy & policy, const GateConfig & gate,
  const EntropyConfig & entropy_config)
{
  gate.validate();
  entropy_config.validate();
  if (scene.agents.empty()) {
    throw ContractViolation("scene has no agents");
  }

  GameTrace trace;
  trace.levels.resize(gate.levels);

  std::vector<AgentGameState> states;
  states.reserve(scene.agents.size());
  for (const auto & agent : scene.agents) {
    MtpResult result = policy.level0(scene, agent.id);
    ++trace.policy_eval_count;
    require_valid_mtp(result, "policy output for " + agent_level(agent.id, 0));
    trace.levels[0][agent.id] = {result, std::nullopt, true, true};
    states.push_back({agent.id, true, std::nullopt, std::move(result), std::nullopt});
  }

  for (std::size_t level = 1; level < gate.levels; ++level) {
    auto gated = gate_step(states, gate.thresholds[level - 1], level, entropy_config);
    states = std::move(gated.states);
    for (const auto & decision : gated.decisions) {
      trace.levels[level - 1][decision.agent].entropy = decision.entropy;
    }
    trace.gate_log.insert(trace.gate_log.end(), gated.decisions.begin(), gated.decisions.end());

    // Immutable level-(k-1) snapshot shared by every refine call at this level.
    std::map<AgentId, MtpResult> snapshot;
    for (const auto & state : states) {
      snapshot.emplace(state.agent, state.current);
    }

    for (auto & state : states) {
      if (!state.active) {
        trace.levels[level][state.agent] = {state.current, state.last_entropy, false, false};
        continue;
      }
      auto others = snapshot;
      others.erase(state.agent);
      MtpResult refined =
        policy.refine(scene, state.agent, snapshot.at(state.agent), others, level);
      ++trace.policy_eval_count;
      require_valid_mtp(refined, "policy output for " + agent_level(state.agent, level));
      state.current = std::move(refined);
      trace.levels[level][state.agent] = {state.current, std::nullopt, true, true};
    }
  }

  // Score the last level too so every level has a complete entropy column.
  const std::size_t last = gate.levels - 1;
  for (auto & state : states) {
    auto & record = trace.levels[last][state.agent];
    if (record.evaluated) {
      record.entropy = trajectory_entropy(state.current, entropy_config).value;
    }
  }
  return trace;
}

GameTrace run_ungated(
  const Scene & scene, const Policy & policy, std::size_t levels,
  const EntropyConfig & entropy_config)
{
  return run_level_k_game(scene, policy, GateConfig::disabled(levels), entropy_config);
}

}  // namespace trajectory_entropy
