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

#ifndef TRAJECTORY_ENTROPY__POLICIES_HPP_
#define TRAJECTORY_ENTROPY__POLICIES_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "trajectory_entropy/game_engine.hpp"
#include "trajectory_entropy/scenarios.hpp"
#include "trajectory_entropy/types.hpp"

namespace trajectory_entropy
{

/**
 * @brief Knobs of the analytic fan / contraction policy.
 *
 * Mode m uses heading_offsets[m / S] and speed_scalings[m % S] with
 * S = speed_scalings.size(), so offsets vary slowest.
 */
struct FanPolicyParams
{
  std::size_t mode_count{6};
  std::vector<double> heading_offsets{0.0, 0.35, -0.35};  // rad
  std::vector<double> speed_scalings{1.0, 0.75};
  double confidence_temperature{4.0};  // m
  // Fraction of each mode's deviation from the weighted mean kept per level.
  // 1.0 is accepted as the "no contraction" sentinel.
  double contraction_rate{0.5};
  double conflict_time_gap{2.0};  // s
  double conflict_radius{3.0};    // m
  // Share of the heading-induced lateral drift removed before the first junction.
  double lane_adherence{0.95};
  // Relative per-mode speed perturbation, drawn from `seed`.
  double speed_jitter{0.02};
  std::uint64_t seed{0};

  /// Throws ConfigError on violated invariants.
  void validate() const;
};

/// Level-0 fan: constant-speed rollouts that follow the lane centerline up to
/// the first junction (crossing with another centerline) and leave it with
/// their heading offset afterwards. Confidences are a softmax of the negative
/// mean lateral deviation from the centerline over `confidence_temperature`.
///
/// Throws ConfigError when the agent's lane has no centerline.
MtpResult fan_level0(const Scene & scene, AgentId agent, const FanPolicyParams & params);

/**
 * @brief One level of refinement.
 *
 *  1. Every mode is pulled toward the confidence-weighted mean trajectory,
 *     keeping `contraction_rate` of its deviation.
 *  2. A mode that comes within `conflict_radius` of the best mode of an agent
 *     with a smaller id is delayed in whole time steps until it is clear of
 *     all of them and passes the conflict point at least `conflict_time_gap`
 *     after the other agent.
 *  3. Confidences are sharpened to c^(1/rate), renormalized.
 *
 * Throws ContractViolation when `others` lacks an agent of the scene.
 */
MtpResult contraction_refine(
  const Scene & scene, AgentId agent, const MtpResult & own_previous,
  const std::map<AgentId, MtpResult> & others, std::size_t level,
  const FanPolicyParams & params);

/// Index of the highest-confidence mode; ties resolve to the lowest index.
std::size_t best_mode_index(const MtpResult & result);

class FanPolicy : public Policy
{
public:
  explicit FanPolicy(FanPolicyParams params = {});

  MtpResult level0(const Scene & scene, AgentId agent) const override;
  MtpResult refine(
    const Scene & scene, AgentId agent, const MtpResult & own_previous,
    const std::map<AgentId, MtpResult> & others, std::size_t level) const override;

  const FanPolicyParams & params() const { return params_; }

private:
  FanPolicyParams params_;
};

}  // namespace trajectory_entropy

#endif  // TRAJECTORY_ENTROPY__POLICIES_HPP_
