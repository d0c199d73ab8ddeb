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

#ifndef TRAJECTORY_ENTROPY__ENTROPY_HPP_
#define TRAJECTORY_ENTROPY__ENTROPY_HPP_

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trajectory_entropy/types.hpp"

namespace trajectory_entropy
{

/**
 * @brief Per-step denominator used when accumulating point-set entropies.
 *
 * All variants are confidence-weighted expectations over modes:
 *  - kUnitStepSquared:  sum_j c_j * ||p_j^t - p_j^{t-1}||^2   (default, dimensionless result)
 *  - kUnitStepLinear:   sum_j c_j * ||p_j^t - p_j^{t-1}||
 *  - kCumulativeAtStep: sum_j c_j * ||p_j^t - origin||
 *  - kFinalLength:      sum_j c_j * ||p_j^T - origin||          (independent of t)
 */
enum class NormalizationVariant {
  kUnitStepSquared,
  kUnitStepLinear,
  kCumulativeAtStep,
  kFinalLength,
};

/// Unordered sums each pair {i, j} once; Ordered sums (i, j) and (j, i).
enum class PairConvention {
  kUnordered,
  kOrdered,
};

struct EntropyConfig
{
  NormalizationVariant variant{NormalizationVariant::kUnitStepSquared};
  // Floor for the normalization denominator.
  double epsilon{1e-9};
  PairConvention pairs{PairConvention::kUnordered};

  /// Throws ConfigError when epsilon is not a positive finite number.
  void validate() const;
};

struct TrajectoryEntropy
{
  double value{0.0};

  friend auto operator<=>(const TrajectoryEntropy &, const TrajectoryEntropy &) = default;
};

struct SnrPair
{
  std::size_t i;
  std::size_t j;
  double snr;
};

// CLI spellings: unit-step-squared, unit-step, cumulative, final.
std::string to_string(NormalizationVariant variant);
std::optional<NormalizationVariant> parse_normalization(std::string_view name);
// unordered, ordered.
std::string to_string(PairConvention pairs);
std::optional<PairConvention> parse_pair_convention(std::string_view name);

/// SNR of every inter-mode distance signal at one timestep:
/// d_ij^2 / sigma_ij^2 with sigma_ij^2 = 1 / (c_i c_j).
/// Throws ContractViolation on size mismatch, empty input or non-positive confidence.
std::vector<SnrPair> pairwise_snr(
  std::span<const Point2> points, std::span<const double> confidences,
  PairConvention pairs = PairConvention::kUnordered);

/// Sum of pairwise_snr over the configured pair convention.
double point_set_entropy(
  std::span<const Point2> points, std::span<const double> confidences,
  PairConvention pairs = PairConvention::kUnordered);

/// Normalization denominator at 1-based step t (before the epsilon floor).
/// Throws std::out_of_range unless 1 <= t <= T.
double normalization_factor(
  const MtpResult & mtp, std::size_t t, NormalizationVariant variant);

/// Sum over t of point_set_entropy(P_t) / max(normalization_factor(t), epsilon).
///
/// Modes are processed in a canonical order (confidence descending, then
/// coordinates), so the result is bitwise independent of the input mode order.
/// Throws ContractViolation when `mtp` fails validate_mtp, ConfigError on a bad config.
TrajectoryEntropy trajectory_entropy(const MtpResult & mtp, const EntropyConfig & config = {});

}  // namespace trajectory_entropy

#endif  // TRAJECTORY_ENTROPY__ENTROPY_HPP_
