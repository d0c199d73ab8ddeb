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

#ifndef TRAJECTORY_ENTROPY__TYPES_HPP_
#define TRAJECTORY_ENTROPY__TYPES_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace trajectory_entropy
{

/// Planar position in a scene-local Cartesian frame, meters.
struct Point2
{
  double x{0.0};
  double y{0.0};

  friend bool operator==(const Point2 &, const Point2 &) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

inline double squared_norm(Point2 p) { return p.x * p.x + p.y * p.y; }
double norm(Point2 p);
double squared_distance(Point2 a, Point2 b);
double distance(Point2 a, Point2 b);
bool is_finite(Point2 p);

/// One candidate future of an agent. Points are indexed t = 1..T at a uniform
/// spacing; the predecessor of the first point is the owning MtpResult's origin.
struct ModeTrajectory
{
  std::vector<Point2> points;
  double confidence{1.0};

  std::size_t horizon() const { return points.size(); }

  friend bool operator==(const ModeTrajectory &, const ModeTrajectory &) = default;
};

/// Multimodal prediction for one agent: M confidence-weighted modes sharing a horizon.
struct MtpResult
{
  Point2 origin;
  std::vector<ModeTrajectory> modes;
  double dt{0.1};

  std::size_t mode_count() const { return modes.size(); }
  std::size_t horizon() const { return modes.empty() ? 0 : modes.front().horizon(); }

  friend bool operator==(const MtpResult &, const MtpResult &) = default;
};

struct AgentId
{
  std::int64_t value{0};

  friend auto operator<=>(const AgentId &, const AgentId &) = default;
};

inline constexpr double kConfidenceSumTolerance = 1e-6;

enum class ViolationKind {
  kNoModes,
  kEmptyTrajectory,
  kRaggedHorizon,
  kNonPositiveConfidence,
  kConfidenceSum,
  kNonFinitePoint,
  kNonFiniteOrigin,
  kNonPositiveDt,
};

/// Short stable label, e.g. "confidence sum" or "ragged horizon".
std::string to_string(ViolationKind kind);

struct Violation
{
  ViolationKind kind;
  std::string detail;
};

struct ValidationOutcome
{
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  /// All violations joined as "label: detail; label: detail".
  std::string summary() const;
};

/// Checks every MtpResult invariant. Violations are reported, never thrown.
ValidationOutcome validate_mtp(const MtpResult & result);

/// Throws ContractViolation carrying `context` when validate_mtp fails.
void require_valid_mtp(const MtpResult & result, const std::string & context);

/// Squared step length ||p^t - p^{t-1}||^2 for 1-based t; p^0 is `origin`.
/// Throws std::out_of_range unless 1 <= t <= T.
double displacement(const ModeTrajectory & traj, Point2 origin, std::size_t t);

}  // namespace trajectory_entropy

template <>
struct std::hash<trajectory_entropy::AgentId>
{
  std::size_t operator()(const trajectory_entropy::AgentId & id) const noexcept
  {
    return std::hash<std::int64_t>{}(id.value);
  }
};

#endif  // TRAJECTORY_ENTROPY__TYPES_HPP_
