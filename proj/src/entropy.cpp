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

#include "trajectory_entropy/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "trajectory_entropy/errors.hpp"

namespace trajectory_entropy
{
namespace
{

void check_point_set(std::span<const Point2> points, std::span<const double> confidences)
{
  if (points.size() != confidences.size()) {
    throw ContractViolation(
      "point set has " + std::to_string(points.size()) + " points but " +
      std::to_string(confidences.size()) + " confidences");
  }
  if (points.empty()) {
    throw ContractViolation("point set is empty");
  }
  for (double c : confidences) {
    if (!(c > 0.0)) {
      throw ContractViolation("confidence must be positive, got " + std::to_string(c));
    }
  }
}

bool lexicographically_less(Point2 a, Point2 b)
{
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

// Sum over i<j of c_i c_j ||p_i - p_j||^2, evaluated in O(M) as
// S * sum_i c_i ||q_i||^2 - ||sum_i c_i q_i||^2 with q_i = p_i - p_ref.
// p_ref is the first (highest-confidence) entry of `order`, which bounds the
// cancellation between the two terms by a factor of about M.
template <typename PointAt, typename ConfidenceAt>
double unordered_snr_sum(
  const std::vector<std::size_t> & order, PointAt point_at, ConfidenceAt confidence_at)
{
  if (order.size() < 2) {
    return 0.0;
  }
  const Point2 reference = point_at(order.front());
  double weight_sum = 0.0;
  double weighted_sq = 0.0;
  double first_x = 0.0;
  double first_y = 0.0;
  for (std::size_t idx : order) {
    const double c = confidence_at(idx);
    const Point2 q = point_at(idx) - reference;
    weight_sum += c;
    weighted_sq += c * squared_norm(q);
    first_x += c * q.x;
    first_y += c * q.y;
  }
  const double value = weight_sum * weighted_sq - (first_x * first_x + first_y * first_y);
  return std::max(value, 0.0);
}

std::vector<std::size_t> canonical_point_order(
  std::span<const Point2> points, std::span<const double> confidences)
{
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (confidences[a] != confidences[b]) {
      return confidences[a] > confidences[b];
    }
    return lexicographically_less(points[a], points[b]);
  });
  return order;
}

std::vector<std::size_t> canonical_mode_order(const MtpResult & mtp)
{
  std::vector<std::size_t> order(mtp.modes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto & ma = mtp.modes[a];
    const auto & mb = mtp.modes[b];
    if (ma.confidence != mb.confidence) {
      return ma.confidence > mb.confidence;
    }
    return std::lexicographical_compare(
      ma.points.begin(), ma.points.end(), mb.points.begin(), mb.points.end(),
      lexicographically_less);
  });
  return order;
}

double step_length(const MtpResult & mtp, std::size_t mode, std::size_t t, bool squared)
{
  const double sq = displacement(mtp.modes[mode], mtp.origin, t);
  return squared ? sq : std::sqrt(sq);
}

double ordered_normalization(
  const MtpResult & mtp, const std::vector<std::size_t> & order, std::size_t t,
  NormalizationVariant variant)
{
  double sum = 0.0;
  for (std::size_t j : order) {
    const auto & mode = mtp.modes[j];
    double length = 0.0;
    switch (variant) {
      case NormalizationVariant::kUnitStepSquared:
        length = step_length(mtp, j, t, true);
        break;
      case NormalizationVariant::kUnitStepLinear:
        length = step_length(mtp, j, t, false);
        break;
      case NormalizationVariant::kCumulativeAtStep:
        length = distance(mode.points[t - 1], mtp.origin);
        break;
      case NormalizationVariant::kFinalLength:
        length = distance(mode.points.back(), mtp.origin);
        break;
    }
    sum += mode.confidence * length;
  }
  return sum;
}

double apply_convention(double unordered, PairConvention pairs)
{
  return pairs == PairConvention::kOrdered ? 2.0 * unordered : unordered;
}

}  // namespace

void EntropyConfig::validate() const
{
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("entropy epsilon must be a positive finite number");
  }
}

std::string to_string(NormalizationVariant variant)
{
  switch (variant) {
    case NormalizationVariant::kUnitStepSquared:
      return "unit-step-squared";
    case NormalizationVariant::kUnitStepLinear:
      return "unit-step";
    case NormalizationVariant::kCumulativeAtStep:
      return "cumulative";
    case NormalizationVariant::kFinalLength:
      return "final";
  }
  return "unknown";
}

std::optional<NormalizationVariant> parse_normalization(std::string_view name)
{
  for (auto v :
       {NormalizationVariant::kUnitStepSquared, NormalizationVariant::kUnitStepLinear,
        NormalizationVariant::kCumulativeAtStep, NormalizationVariant::kFinalLength}) {
    if (to_string(v) == name) {
      return v;
    }
  }
  return std::nullopt;
}

std::string to_string(PairConvention pairs)
{
  return pairs == PairConvention::kOrdered ? "ordered" : "unordered";
}

std::optional<PairConvention> parse_pair_convention(std::string_view name)
{
  if (name == "unordered") {
    return PairConvention::kUnordered;
  }
  if (name == "ordered") {
    return PairConvention::kOrdered;
  }
  return std::nullopt;
}

std::vector<SnrPair> pairwise_snr(
  std::span<const Point2> points, std::span<const double> confidences, PairConvention pairs)
{
  check_point_set(points, confidences);
  std::vector<SnrPair> out;
  const std::size_t m = points.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const bool take = pairs == PairConvention::kOrdered ? i != j : i < j;
      if (take) {
        out.push_back({i, j, squared_distance(points[i], points[j]) * confidences[i] * confidences[j]});
      }
    }
  }
  return out;
}

double point_set_entropy(
  std::span<const Point2> points, std::span<const double> confidences, PairConvention pairs)
{
  check_point_set(points, confidences);
  const auto order = canonical_point_order(points, confidences);
  const double unordered = unordered_snr_sum(
    order, [&](std::size_t i) { return points[i]; }, [&](std::size_t i) { return confidences[i]; });
  return apply_convention(unordered, pairs);
}

double normalization_factor(const MtpResult & mtp, std::size_t t, NormalizationVariant variant)
{
  const std::size_t horizon = mtp.horizon();
  if (t < 1 || t > horizon) {
    throw std::out_of_range(
      "timestep " + std::to_string(t) + " outside [1, " + std::to_string(horizon) + "]");
  }
  std::vector<std::size_t> order(mtp.modes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return ordered_normalization(mtp, order, t, variant);
}

TrajectoryEntropy trajectory_entropy(const MtpResult & mtp, const EntropyConfig & config)
{
  config.validate();
  require_valid_mtp(mtp, "trajectory_entropy");
  if (mtp.modes.size() < 2) {
    return {0.0};
  }

  const auto order = canonical_mode_order(mtp);
  const std::size_t horizon = mtp.horizon();
  double total = 0.0;
  for (std::size_t t = 1; t <= horizon; ++t) {
    const double snr = unordered_snr_sum(
      order, [&](std::size_t j) { return mtp.modes[j].points[t - 1]; },
      [&](std::size_t j) { return mtp.modes[j].confidence; });
    const double denominator =
      std::max(ordered_normalization(mtp, order, t, config.variant), config.epsilon);
    total += snr / denominator;
  }
  return {apply_convention(total, config.pairs)};
}

}  // namespace trajectory_entropy
