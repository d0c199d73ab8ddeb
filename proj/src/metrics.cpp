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

#include "trajectory_entropy/metrics.hpp"

#include <algorithm>
#include <limits>

#include "trajectory_entropy/errors.hpp"

namespace trajectory_entropy
{
namespace
{

void require_same_length(std::size_t a, std::size_t b, const char * what)
{
  if (a != b || a == 0) {
    throw ContractViolation(
      std::string(what) + ": horizon mismatch (" + std::to_string(a) + " vs " +
      std::to_string(b) + ")");
  }
}

}  // namespace

double ade(const ModeTrajectory & mode, const ModeTrajectory & gt)
{
  require_same_length(mode.points.size(), gt.points.size(), "ade");
  double sum = 0.0;
  for (std::size_t t = 0; t < gt.points.size(); ++t) {
    sum += distance(mode.points[t], gt.points[t]);
  }
  return sum / static_cast<double>(gt.points.size());
}

double fde(const ModeTrajectory & mode, const ModeTrajectory & gt)
{
  require_same_length(mode.points.size(), gt.points.size(), "fde");
  return distance(mode.points.back(), gt.points.back());
}

double min_ade(const MtpResult & pred, const ModeTrajectory & gt)
{
  require_same_length(pred.horizon(), gt.points.size(), "min_ade");
  double best = std::numeric_limits<double>::infinity();
  for (const auto & mode : pred.modes) {
    best = std::min(best, ade(mode, gt));
  }
  return best;
}

double min_fde(const MtpResult & pred, const ModeTrajectory & gt)
{
  require_same_length(pred.horizon(), gt.points.size(), "min_fde");
  double best = std::numeric_limits<double>::infinity();
  for (const auto & mode : pred.modes) {
    best = std::min(best, fde(mode, gt));
  }
  return best;
}

bool miss(const MtpResult & pred, const ModeTrajectory & gt, double threshold)
{
  return min_fde(pred, gt) > threshold;
}

bool collision(const ModeTrajectory & a, const ModeTrajectory & b, double radius)
{
  require_same_length(a.points.size(), b.points.size(), "collision");
  for (std::size_t t = 0; t < a.points.size(); ++t) {
    if (distance(a.points[t], b.points[t]) < radius) {
      return true;
    }
  }
  return false;
}

}  // namespace trajectory_entropy
