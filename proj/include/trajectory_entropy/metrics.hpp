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

#ifndef TRAJECTORY_ENTROPY__METRICS_HPP_
#define TRAJECTORY_ENTROPY__METRICS_HPP_

#include "trajectory_entropy/types.hpp"

namespace trajectory_entropy
{

inline constexpr double kDefaultMissThreshold = 2.0;    // m
inline constexpr double kDefaultCollisionRadius = 3.0;  // m

struct EvalMetrics
{
  double min_ade{0.0};
  double min_fde{0.0};
  bool miss{false};
  bool collision{false};
};

// Displacement metrics. Each throws ContractViolation when the prediction
// horizon differs from the ground-truth length.

/// Mean per-step Euclidean distance of a single trajectory to the ground truth.
double ade(const ModeTrajectory & mode, const ModeTrajectory & gt);
/// Final-step Euclidean distance of a single trajectory to the ground truth.
double fde(const ModeTrajectory & mode, const ModeTrajectory & gt);

double min_ade(const MtpResult & pred, const ModeTrajectory & gt);
double min_fde(const MtpResult & pred, const ModeTrajectory & gt);

/// min_fde strictly greater than `threshold`.
bool miss(const MtpResult & pred, const ModeTrajectory & gt,
          double threshold = kDefaultMissThreshold);

/// True iff some same-step pair of points is closer than `radius`.
bool collision(const ModeTrajectory & a, const ModeTrajectory & b,
               double radius = kDefaultCollisionRadius);

}  // namespace trajectory_entropy

#endif  // TRAJECTORY_ENTROPY__METRICS_HPP_
