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

#include "trajectory_entropy/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "trajectory_entropy/errors.hpp"
#include "trajectory_entropy/geometry.hpp"
#include "trajectory_entropy/random.hpp"

namespace trajectory_entropy
{
namespace
{

double wrap_angle(double a)
{
  return std::remainder(a, 2.0 * std::numbers::pi);
}

Point2 left_normal(double heading) { return {-std::sin(heading), std::cos(heading)}; }

// Softmax of `logits`, max-shifted for stability.
std::vector<double> softmax(const std::vector<double> & logits)
{
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - top);
    sum += out[i];
  }
  for (double & v : out) {
    v /= sum;
  }
  return out;
}

// Arc length of the first crossing of the agent's lane with any other
// centerline ahead of `from_s`; +inf when the lane never meets another.
double first_junction(const Scene & scene, LaneId lane, double from_s)
{
  const auto & line = scene.centerlines.at(lane);
  double best = std::numeric_limits<double>::infinity();
  for (const auto & [id, other] : scene.centerlines) {
    if (id == lane) {
      continue;
    }
    for (double s : crossings(line, other)) {
      if (s > from_s) {
        best = std::min(best, s);
        break;
      }
    }
  }
  return best;
}

Point2 at_step(const ModeTrajectory & mode, Point2 origin, std::ptrdiff_t t)
{
  return t <= 0 ? origin : mode.points[static_cast<std::size_t>(t - 1)];
}

ModeTrajectory delayed(const ModeTrajectory & mode, Point2 origin, std::size_t shift)
{
  ModeTrajectory out;
  out.confidence = mode.confidence;
  out.points.reserve(mode.points.size());
  for (std::size_t t = 1; t <= mode.points.size(); ++t) {
    out.points.push_back(
      at_step(mode, origin, static_cast<std::ptrdiff_t>(t) - static_cast<std::ptrdiff_t>(shift)));
  }
  return out;
}

// First 1-based step at which the two paths are closer than radius, or 0.
std::size_t first_conflict(
  const std::vector<Point2> & a, const std::vector<Point2> & b, double radius)
{
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t t = 0; t < n; ++t) {
    if (distance(a[t], b[t]) < radius) {
      return t + 1;
    }
  }
  return 0;
}

}  // namespace

void FanPolicyParams::validate() const
{
  if (mode_count < 1) {
    throw ConfigError("mode_count must be >= 1");
  }
  if (heading_offsets.size() * speed_scalings.size() < mode_count) {
    throw ConfigError("heading_offsets x speed_scalings must provide at least mode_count modes");
  }
  for (double s : speed_scalings) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw ConfigError("speed scalings must be finite and non-negative");
    }
  }
  for (double h : heading_offsets) {
    if (!std::isfinite(h)) {
      throw ConfigError("heading offsets must be finite");
    }
  }
  if (!(confidence_temperature > 0.0) || !std::isfinite(confidence_temperature)) {
    throw ConfigError("confidence_temperature must be positive");
  }
  if (!(contraction_rate > 0.0 && contraction_rate <= 1.0)) {
    throw ConfigError("contraction_rate must lie in (0, 1]");
  }
  if (!(conflict_time_gap >= 0.0) || !std::isfinite(conflict_time_gap)) {
    throw ConfigError("conflict_time_gap must be non-negative");
  }
  if (!(conflict_radius > 0.0) || !std::isfinite(conflict_radius)) {
    throw ConfigError("conflict_radius must be positive");
  }
  if (!(lane_adherence >= 0.0 && lane_adherence <= 1.0)) {
    throw ConfigError("lane_adherence must lie in [0, 1]");
  }
  if (!(speed_jitter >= 0.0 && speed_jitter < 0.5)) {
    throw ConfigError("speed_jitter must lie in [0, 0.5)");
  }
}

std::size_t best_mode_index(const MtpResult & result)
{
  std::size_t best = 0;
  for (std::size_t j = 1; j < result.modes.size(); ++j) {
    if (result.modes[j].confidence > result.modes[best].confidence) {
      best = j;
    }
  }
  return best;
}

MtpResult fan_level0(const Scene & scene, AgentId id, const FanPolicyParams & params)
{
  params.validate();
  const AgentInit & agent = scene.agent(id);
  const Polyline & lane = scene.lane_of(agent);

  const auto here = project_onto(lane, agent.position);
  const double start_s = here.arc_length;
  const double junction_s = first_junction(scene, agent.lane, start_s);
  const double heading_error = wrap_angle(agent.heading - heading_at_arc_length(lane, start_s));
  const std::size_t n_speeds = params.speed_scalings.size();
  const double drift_share = 1.0 - params.lane_adherence;

  MtpResult result;
  result.origin = agent.position;
  result.dt = scene.dt;
  std::vector<double> logits;
  for (std::size_t m = 0; m < params.mode_count; ++m) {
    const double offset = params.heading_offsets[m / n_speeds];
    SplitMix jitter(derive_seed(derive_seed(params.seed, static_cast<std::uint64_t>(id.value)), m));
    const double scale =
      params.speed_scalings[m % n_speeds] * (1.0 + params.speed_jitter * jitter.uniform(-1.0, 1.0));
    const double speed = agent.speed * scale;
    const double drift_rate = drift_share * std::sin(offset + heading_error);

    ModeTrajectory mode;
    mode.points.reserve(scene.horizon);
    double deviation = 0.0;
    for (std::size_t t = 1; t <= scene.horizon; ++t) {
      const double travelled = speed * static_cast<double>(t) * scene.dt;
      Point2 p;
      if (start_s + travelled <= junction_s) {
        const double s = start_s + travelled;
        const double lateral = here.signed_offset + drift_rate * travelled;
        p = point_at_arc_length(lane, s) + lateral * left_normal(heading_at_arc_length(lane, s));
      } else {
        const double to_junction = junction_s - start_s;
        const double lateral = here.signed_offset + drift_rate * to_junction;
        const double lane_heading = heading_at_arc_length(lane, junction_s);
        const Point2 exit =
          point_at_arc_length(lane, junction_s) + lateral * left_normal(lane_heading);
        const double heading = lane_heading + offset;
        p = exit + (travelled - to_junction) * Point2{std::cos(heading), std::sin(heading)};
      }
      deviation += std::abs(project_onto(lane, p).signed_offset);
      mode.points.push_back(p);
    }
    deviation /= static_cast<double>(scene.horizon);
    logits.push_back(-deviation / params.confidence_temperature);
    result.modes.push_back(std::move(mode));
  }

  const auto confidences = softmax(logits);
  for (std::size_t m = 0; m < result.modes.size(); ++m) {
    result.modes[m].confidence = confidences[m];
  }
  return result;
}

MtpResult contraction_refine(
  const Scene & scene, AgentId id, const MtpResult & own_previous,
  const std::map<AgentId, MtpResult> & others, std::size_t level,
  const FanPolicyParams & params)
{
  params.validate();
  require_valid_mtp(own_previous, "contraction_refine input");
  for (const auto & agent : scene.agents) {
    if (agent.id != id && !others.contains(agent.id)) {
      throw ContractViolation(
        "refine at level " + std::to_string(level) + " is missing agent " +
        std::to_string(agent.id.value));
    }
  }

  const double rate = params.contraction_rate;
  const std::size_t horizon = own_previous.horizon();
  MtpResult out = own_previous;

  // 1. consensus contraction
  if (rate < 1.0) {
    double weight_sum = 0.0;
    for (const auto & mode : own_previous.modes) {
      weight_sum += mode.confidence;
    }
    for (std::size_t t = 0; t < horizon; ++t) {
      Point2 mean{0.0, 0.0};
      for (const auto & mode : own_previous.modes) {
        mean = mean + mode.confidence * mode.points[t];
      }
      mean = (1.0 / weight_sum) * mean;
      for (std::size_t j = 0; j < out.modes.size(); ++j) {
        out.modes[j].points[t] = mean + rate * (own_previous.modes[j].points[t] - mean);
      }
    }
  }

  // 2. yield to the best mode of every higher-priority (smaller id) agent
  std::vector<const std::vector<Point2> *> priority_paths;
  for (const auto & [other_id, other] : others) {
    if (other_id < id) {
      priority_paths.push_back(&other.modes[best_mode_index(other)].points);
    }
  }
  auto clear_of_all = [&](const ModeTrajectory & mode) {
    for (const auto * path : priority_paths) {
      if (first_conflict(mode.points, *path, params.conflict_radius) != 0) {
        return false;
      }
    }
    return true;
  };
  const double gap_steps = params.conflict_time_gap / own_previous.dt;
  for (auto & mode : out.modes) {
    std::ptrdiff_t shift = 0;
    for (const auto * path : priority_paths) {
      const std::size_t conflict_step = first_conflict(mode.points, *path, params.conflict_radius);
      if (conflict_step == 0) {
        continue;
      }
      // Step at which the other agent is closest to our conflict point.
      const Point2 spot = mode.points[conflict_step - 1];
      std::size_t other_step = 1;
      for (std::size_t t = 1; t <= path->size(); ++t) {
        if (distance((*path)[t - 1], spot) < distance((*path)[other_step - 1], spot)) {
          other_step = t;
        }
      }
      const double needed = static_cast<double>(other_step) - static_cast<double>(conflict_step) +
                            gap_steps;
      shift = std::max<std::ptrdiff_t>(
        {shift, 1, static_cast<std::ptrdiff_t>(std::ceil(needed - 1e-9))});
    }
    if (shift == 0) {
      continue;
    }
    const auto max_shift = static_cast<std::ptrdiff_t>(horizon);
    shift = std::min(shift, max_shift);
    ModeTrajectory candidate = delayed(mode, own_previous.origin, static_cast<std::size_t>(shift));
    while (shift < max_shift && !clear_of_all(candidate)) {
      ++shift;
      candidate = delayed(mode, own_previous.origin, static_cast<std::size_t>(shift));
    }
    mode = std::move(candidate);
  }

  // 3. sharpen confidences
  std::vector<double> logits;
  logits.reserve(out.modes.size());
  for (const auto & mode : out.modes) {
    logits.push_back(std::log(mode.confidence) / rate);
  }
  const auto confidences = softmax(logits);
  for (std::size_t j = 0; j < out.modes.size(); ++j) {
    out.modes[j].confidence = confidences[j];
  }
  return out;
}

FanPolicy::FanPolicy(FanPolicyParams params) : params_(std::move(params)) { params_.validate(); }

MtpResult FanPolicy::level0(const Scene & scene, AgentId agent) const
{
  return fan_level0(scene, agent, params_);
}

MtpResult FanPolicy::refine(
  const Scene & scene, AgentId agent, const MtpResult & own_previous,
  const std::map<AgentId, MtpResult> & others, std::size_t level) const
{
  return contraction_refine(scene, agent, own_previous, others, level, params_);
}

}  // namespace trajectory_entropy
