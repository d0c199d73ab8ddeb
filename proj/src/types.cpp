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

#include "trajectory_entropy/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "trajectory_entropy/errors.hpp"

namespace trajectory_entropy
{

double norm(Point2 p) { return std::hypot(p.x, p.y); }

double squared_distance(Point2 a, Point2 b) { return squared_norm(a - b); }

double distance(Point2 a, Point2 b) { return norm(a - b); }

bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

std::string to_string(ViolationKind kind)
{
  switch (kind) {
    case ViolationKind::kNoModes:
      return "no modes";
    case ViolationKind::kEmptyTrajectory:
      return "empty trajectory";
    case ViolationKind::kRaggedHorizon:
      return "ragged horizon";
    case ViolationKind::kNonPositiveConfidence:
      return "non-positive confidence";
    case ViolationKind::kConfidenceSum:
      return "confidence sum";
    case ViolationKind::kNonFinitePoint:
      return "non-finite point";
    case ViolationKind::kNonFiniteOrigin:
      return "non-finite origin";
    case ViolationKind::kNonPositiveDt:
      return "non-positive dt";
  }
  return "unknown";
}

bool ValidationOutcome::has(ViolationKind kind) const
{
  return std::any_of(
    violations.begin(), violations.end(), [kind](const Violation & v) { return v.kind == kind; });
}

std::string ValidationOutcome::summary() const
{
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i > 0) {
      out << "; ";
    }
    out << to_string(violations[i].kind) << ": " << violations[i].detail;
  }
  return out.str();
}

ValidationOutcome validate_mtp(const MtpResult & result)
{
  ValidationOutcome outcome;
  auto report = [&outcome](ViolationKind kind, std::string detail) {
    outcome.violations.push_back({kind, std::move(detail)});
  };

  if (!(result.dt > 0.0) || !std::isfinite(result.dt)) {
    report(ViolationKind::kNonPositiveDt, "dt = " + std::to_string(result.dt));
  }
  if (!is_finite(result.origin)) {
    report(ViolationKind::kNonFiniteOrigin, "origin has NaN/Inf coordinate");
  }
  if (result.modes.empty()) {
    report(ViolationKind::kNoModes, "M = 0");
    return outcome;
  }

  const std::size_t horizon = result.modes.front().horizon();
  double confidence_sum = 0.0;
  bool ragged = false;
  for (std::size_t j = 0; j < result.modes.size(); ++j) {
    const auto & mode = result.modes[j];
    const std::string tag = "mode " + std::to_string(j);
    if (mode.points.empty()) {
      report(ViolationKind::kEmptyTrajectory, tag + " has no points");
    }
    if (mode.horizon() != horizon) {
      ragged = true;
    }
    if (!(mode.confidence > 0.0) || !std::isfinite(mode.confidence)) {
      report(
        ViolationKind::kNonPositiveConfidence,
        tag + " confidence = " + std::to_string(mode.confidence));
    }
    if (!std::all_of(mode.points.begin(), mode.points.end(), [](Point2 p) { return is_finite(p); })) {
      report(ViolationKind::kNonFinitePoint, tag + " has NaN/Inf coordinate");
    }
    confidence_sum += mode.confidence;
  }
  if (ragged) {
    std::ostringstream lengths;
    for (std::size_t j = 0; j < result.modes.size(); ++j) {
      lengths << (j ? "," : "") << result.modes[j].horizon();
    }
    report(ViolationKind::kRaggedHorizon, "mode lengths {" + lengths.str() + "}");
  }
  if (!(std::abs(confidence_sum - 1.0) <= kConfidenceSumTolerance)) {
    std::ostringstream detail;
    detail.precision(12);
    detail << "sum = " << confidence_sum;
    report(ViolationKind::kConfidenceSum, detail.str());
  }
  return outcome;
}

void require_valid_mtp(const MtpResult & result, const std::string & context)
{
  const auto outcome = validate_mtp(result);
  if (!outcome.ok()) {
    throw ContractViolation(context + ": invalid MtpResult (" + outcome.summary() + ")");
  }
}

double displacement(const ModeTrajectory & traj, Point2 origin, std::size_t t)
{
  if (t < 1 || t > traj.points.size()) {
    throw std::out_of_range(
      "timestep " + std::to_string(t) + " outside [1, " + std::to_string(traj.points.size()) +
      "]");
  }
  const Point2 previous = t == 1 ? origin : traj.points[t - 2];
  return squared_distance(traj.points[t - 1], previous);
}

}  // namespace trajectory_entropy
