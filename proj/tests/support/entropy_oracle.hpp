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

// Brute-force reference for trajectory_entropy. Deliberately shares no code
// with the library beyond the plain data types: a triple loop over (t, i, j)
// in input order with every distance written out by hand.

#ifndef TESTS__SUPPORT__ENTROPY_ORACLE_HPP_
#define TESTS__SUPPORT__ENTROPY_ORACLE_HPP_

#include <cmath>
#include <cstddef>

#include "trajectory_entropy/entropy.hpp"
#include "trajectory_entropy/types.hpp"

namespace oracle
{

namespace te = trajectory_entropy;

inline double sq(double v) { return v * v; }

inline double sq_dist(const te::Point2 & a, const te::Point2 & b)
{
  return sq(a.x - b.x) + sq(a.y - b.y);
}

inline te::Point2 point_at(const te::MtpResult & mtp, std::size_t j, std::size_t t)
{
  return t == 0 ? mtp.origin : mtp.modes[j].points[t - 1];
}

inline double norm_factor(const te::MtpResult & mtp, std::size_t t, te::NormalizationVariant v)
{
  const std::size_t T = mtp.modes[0].points.size();
  double acc = 0.0;
  for (std::size_t j = 0; j < mtp.modes.size(); ++j) {
    const double c = mtp.modes[j].confidence;
    switch (v) {
      case te::NormalizationVariant::kUnitStepSquared:
        acc += c * sq_dist(point_at(mtp, j, t), point_at(mtp, j, t - 1));
        break;
      case te::NormalizationVariant::kUnitStepLinear:
        acc += c * std::sqrt(sq_dist(point_at(mtp, j, t), point_at(mtp, j, t - 1)));
        break;
      case te::NormalizationVariant::kCumulativeAtStep:
        acc += c * std::sqrt(sq_dist(point_at(mtp, j, t), mtp.origin));
        break;
      case te::NormalizationVariant::kFinalLength:
        acc += c * std::sqrt(sq_dist(point_at(mtp, j, T), mtp.origin));
        break;
    }
  }
  return acc;
}

inline double entropy(const te::MtpResult & mtp, const te::EntropyConfig & cfg = {})
{
  const std::size_t M = mtp.modes.size();
  const std::size_t T = mtp.modes[0].points.size();
  double total = 0.0;
  for (std::size_t t = 1; t <= T; ++t) {
    double step = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
      for (std::size_t j = 0; j < M; ++j) {
        if (i == j) {
          continue;
        }
        if (cfg.pairs == te::PairConvention::kUnordered && j < i) {
          continue;
        }
        // SNR = d^2 / sigma^2, sigma^2 = 1 / (c_i c_j)
        const double sigma2 = 1.0 / (mtp.modes[i].confidence * mtp.modes[j].confidence);
        step += sq_dist(point_at(mtp, i, t), point_at(mtp, j, t)) / sigma2;
      }
    }
    const double denom = norm_factor(mtp, t, cfg.variant);
    total += step / (denom > cfg.epsilon ? denom : cfg.epsilon);
  }
  return total;
}

}  // namespace oracle

#endif  // TESTS__SUPPORT__ENTROPY_ORACLE_HPP_
