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

#include "trajectory_entropy/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trajectory_entropy/errors.hpp"

namespace trajectory_entropy
{
namespace
{

double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

void require_polyline(std::span<const Point2> line)
{
  if (line.size() < 2) {
    throw ContractViolation("polyline needs at least two vertices");
  }
}

// Index of the segment holding arc length s plus the arc length at its start.
std::pair<std::size_t, double> locate(std::span<const Point2> line, double s)
{
  double start = 0.0;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const double len = distance(line[i], line[i + 1]);
    if (s < start + len || i + 2 == line.size()) {
      return {i, start};
    }
    start += len;
  }
  return {0, 0.0};
}

}  // namespace

double polyline_length(std::span<const Point2> line)
{
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    total += distance(line[i], line[i + 1]);
  }
  return total;
}

PolylineProjection project_onto(std::span<const Point2> line, Point2 p)
{
  require_polyline(line);
  PolylineProjection best{0.0, 0.0, line.front()};
  double best_sq = std::numeric_limits<double>::infinity();
  double start = 0.0;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const Point2 a = line[i];
    const Point2 seg = line[i + 1] - a;
    const double len_sq = squared_norm(seg);
    const double len = std::sqrt(len_sq);
    double u = len_sq > 0.0 ? dot(p - a, seg) / len_sq : 0.0;
    // The first and last segments extend to infinity so offsets stay signed
    // and continuous beyond the polyline ends.
    if (i > 0) {
      u = std::max(u, 0.0);
    }
    if (i + 2 < line.size()) {
      u = std::min(u, 1.0);
    }
    const Point2 foot = a + u * seg;
    const double sq = squared_distance(p, foot);
    if (sq < best_sq) {
      best_sq = sq;
      const double side = cross(seg, p - a);
      best.arc_length = start + u * len;
      best.signed_offset = (side >= 0.0 ? 1.0 : -1.0) * std::sqrt(sq);
      best.foot = foot;
    }
    start += len;
  }
  return best;
}

Point2 point_at_arc_length(std::span<const Point2> line, double s)
{
  require_polyline(line);
  const auto [i, start] = locate(line, std::max(s, 0.0));
  const Point2 seg = line[i + 1] - line[i];
  const double len = norm(seg);
  if (len == 0.0) {
    return line[i];
  }
  return line[i] + ((s - start) / len) * seg;
}

double heading_at_arc_length(std::span<const Point2> line, double s)
{
  require_polyline(line);
  const auto [i, start] = locate(line, std::max(s, 0.0));
  const Point2 seg = line[i + 1] - line[i];
  return std::atan2(seg.y, seg.x);
}

std::vector<double> crossings(std::span<const Point2> line, std::span<const Point2> other)
{
  require_polyline(line);
  require_polyline(other);
  std::vector<double> out;
  double start = 0.0;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const Point2 a = line[i];
    const Point2 r = line[i + 1] - a;
    const double len = norm(r);
    for (std::size_t k = 0; k + 1 < other.size(); ++k) {
      const Point2 b = other[k];
      const Point2 q = other[k + 1] - b;
      const double denom = cross(r, q);
      if (denom == 0.0) {
        continue;  // parallel or collinear
      }
      const double u = cross(b - a, q) / denom;
      const double v = cross(b - a, r) / denom;
      if (u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0) {
        out.push_back(start + u * len);
      }
    }
    start += len;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace trajectory_entropy
