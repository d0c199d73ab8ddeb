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

#ifndef TRAJECTORY_ENTROPY__GEOMETRY_HPP_
#define TRAJECTORY_ENTROPY__GEOMETRY_HPP_

#include <optional>
#include <span>
#include <vector>

#include "trajectory_entropy/types.hpp"

namespace trajectory_entropy
{

using Polyline = std::vector<Point2>;

struct PolylineProjection
{
  double arc_length;      // along the polyline, from its first vertex
  double signed_offset;   // positive to the left of the travel direction
  Point2 foot;
};

double polyline_length(std::span<const Point2> line);

/// Closest point on the polyline. Requires at least two vertices.
PolylineProjection project_onto(std::span<const Point2> line, Point2 p);

/// Point at arc length s; extrapolates linearly beyond either end.
Point2 point_at_arc_length(std::span<const Point2> line, double s);

/// Heading of the segment containing arc length s, radians.
double heading_at_arc_length(std::span<const Point2> line, double s);

/// Arc lengths along `line` at which it crosses `other`, ascending.
std::vector<double> crossings(std::span<const Point2> line, std::span<const Point2> other);

}  // namespace trajectory_entropy

#endif  // TRAJECTORY_ENTROPY__GEOMETRY_HPP_
