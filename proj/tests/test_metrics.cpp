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

#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "trajectory_entropy/errors.hpp"
#include "trajectory_entropy/metrics.hpp"

namespace te = trajectory_entropy;

namespace
{

te::ModeTrajectory line(double y, std::size_t T = 5, double conf = 1.0)
{
  te::ModeTrajectory m{{}, conf};
  for (std::size_t t = 1; t <= T; ++t) {
    m.points.push_back({static_cast<double>(t), y});
  }
  return m;
}

te::MtpResult pred(std::vector<te::ModeTrajectory> modes)
{
  te::MtpResult r;
  r.modes = std::move(modes);
  return r;
}

}  // namespace

TEST(MinAde, Examples)
{
  const auto gt = line(0.0);
  EXPECT_EQ(te::min_ade(pred({line(2.0, 5, 0.5), line(0.0, 5, 0.5)}), gt), 0.0);
  EXPECT_DOUBLE_EQ(te::min_ade(pred({line(1.0, 5, 0.5), line(-3.0, 5, 0.5)}), gt), 1.0);
  EXPECT_DOUBLE_EQ(te::min_ade(pred({line(2.5)}), gt), te::ade(line(2.5), gt));
}

TEST(MinFde, Examples)
{
  const auto gt = line(0.0);
  EXPECT_EQ(te::min_fde(pred({line(0.0)}), gt), 0.0);
  auto two = line(0.0, 5, 0.5);
  two.points.back() = {5.0, 2.0};
  auto five = line(0.0, 5, 0.5);
  five.points.back() = {5.0, -5.0};
  EXPECT_DOUBLE_EQ(te::min_fde(pred({five, two}), gt), 2.0);
  EXPECT_THROW(te::min_fde(pred({line(0.0, 4)}), gt), te::ContractViolation);
  EXPECT_THROW(te::min_ade(pred({line(0.0, 6)}), gt), te::ContractViolation);
}

TEST(Miss, StrictThreshold)
{
  const auto gt = line(0.0);
  EXPECT_FALSE(te::miss(pred({line(2.0)}), gt, 2.0));
  EXPECT_TRUE(te::miss(pred({line(2.0)}), gt, 1.999));
  EXPECT_FALSE(te::miss(pred({line(1.0)}), gt));
}

TEST(Collision, Examples)
{
  EXPECT_FALSE(te::collision(line(0.0), line(4.0)));
  te::ModeTrajectory east{{}, 1.0};
  te::ModeTrajectory north{{}, 1.0};
  for (int t = 1; t <= 10; ++t) {
    east.points.push_back({-5.0 + t, 0.0});
    north.points.push_back({0.0, -5.0 + t});
  }
  EXPECT_TRUE(te::collision(east, north));
  EXPECT_TRUE(te::collision(line(1.0), line(1.0)));
  EXPECT_THROW(te::collision(line(0.0, 3), line(0.0, 4)), te::ContractViolation);
}

TEST(MetricsProperty, MinBelowEveryModeAndRigidInvariant)
{
  gen::Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const auto r = gen::mtp(rng, {.max_modes = 6, .max_horizon = 30});
    const auto truth = gen::mtp(rng, {.max_modes = 1, .max_horizon = 30});
    if (truth.horizon() != r.horizon()) {
      continue;
    }
    const auto & gt = truth.modes[0];
    const double ma = te::min_ade(r, gt);
    const double mf = te::min_fde(r, gt);
    for (const auto & m : r.modes) {
      EXPECT_LE(ma, te::ade(m, gt));
      EXPECT_LE(mf, te::fde(m, gt));
    }
    const double angle = rng.uniform(-3, 3);
    const te::Point2 shift{rng.uniform(-50, 50), rng.uniform(-50, 50)};
    auto f = [&](te::Point2 p) { return gen::rigid(p, angle, shift); };
    const auto moved = gen::map_points(r, f);
    const auto moved_gt = gen::map_points(truth, f).modes[0];
    EXPECT_LE(gen::rel_diff(te::min_ade(moved, moved_gt), ma), 1e-9);
    EXPECT_LE(gen::rel_diff(te::min_fde(moved, moved_gt), mf), 1e-9);
  }
}

TEST(MetricsProperty, MissMonotoneAndCollisionSymmetric)
{
  gen::Rng rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = gen::mtp(rng, {.max_modes = 1, .max_horizon = 10});
    auto b = a;
    for (auto & p : b.modes[0].points) {
      p = p + te::Point2{rng.uniform(-6, 6), rng.uniform(-6, 6)};
    }
    const double t1 = rng.uniform(0, 5);
    const double t2 = t1 + rng.uniform(0, 5);
    EXPECT_GE(te::miss(a, b.modes[0], t1), te::miss(a, b.modes[0], t2));
    const double radius = rng.uniform(0.5, 5);
    EXPECT_EQ(te::collision(a.modes[0], b.modes[0], radius), te::collision(b.modes[0], a.modes[0], radius));
  }
}
