#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "uisim/geometry.hpp"

using namespace uisim;
using uisim::support::bwd;
using uisim::support::four_way;
using uisim::support::fwd;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_point(Vec2 p, double x, double y, double tol = 1e-9) {
  EXPECT_NEAR(p.x, x, tol);
  EXPECT_NEAR(p.y, y, tol);
}

double angle_diff(double a, double b) { return std::remainder(a - b, 2.0 * kPi); }

}  // namespace

TEST(LaneLine, HorizontalCenterline) {
  const Line l = lane_line(four_way(1, 1), 0, 0);
  EXPECT_NEAR(l.a, 0.0, 1e-12);
  EXPECT_NEAR(l.b, -1.0, 1e-12);
  EXPECT_NEAR(l.c, 0.0, 1e-12);
}

TEST(LaneLine, OffsetLinesOfVerticalArms) {
  const auto spec = four_way(1, 1);
  // x = -4 for the top arm's boundary and x = 2 for the bottom arm's lane center.
  const Line top = lane_line(spec, 1, 2);
  EXPECT_NEAR(top.signed_distance({-4.0, 7.0}), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(top.a), 1.0, 1e-12);
  const Line bottom = lane_line(spec, 3, 1);
  EXPECT_NEAR(bottom.signed_distance({2.0, -9.0}), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(bottom.a), 1.0, 1e-12);
}

TEST(LaneLine, OffsetOutsideArmIsRejected) {
  EXPECT_THROW(lane_line(four_way(1, 1), 0, 3), std::domain_error);
  EXPECT_THROW(lane_line(four_way(1, 1), 0, -3), std::domain_error);
}

TEST(Layout, SymmetricFourWayCorners) {
  const auto spec = four_way(1, 1);
  const auto layout = corners_and_entrances(spec);
  ASSERT_EQ(layout.corners.size(), 4u);
  for (const auto& c : layout.corners) {
    EXPECT_NEAR(std::abs(c.x), 4.0, 1e-9);
    EXPECT_NEAR(std::abs(c.y), 4.0, 1e-9);
  }
  const auto bottom = layout.entrance_lines[3];
  EXPECT_NEAR(bottom.from.y, -4.0, 1e-9);
  EXPECT_NEAR(bottom.to.y, -4.0, 1e-9);
  EXPECT_NEAR(std::abs(bottom.from.x - bottom.to.x), 8.0, 1e-9);
  expect_point(layout.entrance_point(spec, fwd(3)), 2.0, -4.0);
}

TEST(Layout, CornersPermuteUnderRotation) {
  IntersectionSpec spec;
  spec.arm_count = 5;
  spec.forward_lanes.assign(5, 2);
  spec.backward_lanes.assign(5, 1);
  for (int m = 0; m < 5; ++m) spec.phi.push_back(0.3 + 2.0 * kPi * m / 5.0);
  const auto corners = corners_and_entrances(spec).corners;
  const double c = std::cos(2.0 * kPi / 5.0), s = std::sin(2.0 * kPi / 5.0);
  for (int m = 0; m < 5; ++m) {
    const Vec2 p = corners[m];
    const Vec2 rotated{c * p.x - s * p.y, s * p.x + c * p.y};
    expect_point(rotated, corners[(m + 1) % 5].x, corners[(m + 1) % 5].y);
  }
}

TEST(Spec, RejectsCrowdedArms) {
  auto spec = four_way(1, 1);
  spec.phi[1] = 0.2;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec = four_way(1, 1);
  spec.forward_lanes[2] = 0;
  spec.backward_lanes[2] = 0;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
}

TEST(Maneuver, ClockwiseAngleClassification) {
  const auto spec = four_way(1, 1);
  EXPECT_NEAR(clockwise_angle(spec, 3, 2), kPi / 2.0, 1e-12);
  EXPECT_EQ(classify_maneuver(spec, 3, 2), Maneuver::LeftTurn);
  EXPECT_EQ(classify_maneuver(spec, 3, 1), Maneuver::Straight);
  EXPECT_EQ(classify_maneuver(spec, 3, 0), Maneuver::RightTurn);
  EXPECT_THROW(classify_maneuver(spec, 3, 3), std::domain_error);
}

TEST(Admissible, SingleLaneReachesEveryOtherArm) {
  const auto targets = admissible_targets(four_way(1, 1), fwd(3));
  ASSERT_EQ(targets.size(), 3u);
  for (int arm : {0, 1, 2}) {
    EXPECT_NE(std::find(targets.begin(), targets.end(), bwd(arm)), targets.end());
  }
}

TEST(Admissible, LeftLaneCannotTurnRight) {
  const auto targets = admissible_targets(four_way(2, 2), fwd(3, 1));
  for (const auto& t : targets) EXPECT_NE(t.arm, 0);
  EXPECT_NE(std::find(targets.begin(), targets.end(), bwd(2, 1)), targets.end());
  EXPECT_NE(std::find(targets.begin(), targets.end(), bwd(1, 1)), targets.end());
}

TEST(Admissible, StraightLaneIndexIsCapped) {
  auto spec = four_way(2, 2);
  spec.backward_lanes[1] = 1;
  const auto targets = admissible_targets(spec, fwd(3, 2));
  EXPECT_NE(std::find(targets.begin(), targets.end(), bwd(1, 1)), targets.end());
  EXPECT_EQ(violated_lane_rule(spec, fwd(3, 1), bwd(0, 1)), 2);
  EXPECT_EQ(violated_lane_rule(spec, fwd(3, 2), bwd(2, 1)), 1);
}

TEST(PlanPath, RightTurnArc) {
  const auto spec = four_way(1, 1);
  const Path p = plan_path(spec, fwd(3), bwd(0), 10.0, 20.0);
  ASSERT_TRUE(p.arc().has_value());
  expect_point(p.arc()->center, 4.0, -4.0);
  EXPECT_NEAR(std::abs(p.arc()->radius), 2.0, 1e-9);
  expect_point(p.exit_point(), 4.0, -2.0);
  EXPECT_NEAR(p.rho_exit() - p.rho_entrance(), kPi, 1e-9);
  EXPECT_NEAR(p.rho_entrance(), 10.0, 1e-9);
  const auto at_en = p.eval(p.rho_entrance());
  expect_point(at_en.point, 2.0, -4.0);
  EXPECT_NEAR(angle_diff(at_en.heading, kPi / 2.0), 0.0, 1e-9);
  const auto at_ex = p.eval(p.rho_exit());
  expect_point(at_ex.point, 4.0, -2.0);
  EXPECT_NEAR(angle_diff(at_ex.heading, 0.0), 0.0, 1e-9);
}

TEST(PlanPath, LeftTurnArc) {
  const Path p = plan_path(four_way(1, 1), fwd(3), bwd(2), 10.0, 20.0);
  ASSERT_TRUE(p.arc().has_value());
  expect_point(p.arc()->center, -4.0, -4.0);
  EXPECT_NEAR(std::abs(p.arc()->radius), 6.0, 1e-9);
  expect_point(p.exit_point(), -4.0, 2.0);
  EXPECT_NEAR(p.rho_exit() - p.rho_entrance(), 3.0 * kPi, 1e-9);
}

TEST(PlanPath, ColinearStraightFallback) {
  const Path p = plan_path(four_way(1, 1), fwd(3), bwd(1), 10.0, 20.0);
  EXPECT_FALSE(p.arc().has_value());
  expect_point(p.exit_point(), 2.0, 4.0);
  EXPECT_NEAR(p.rho_exit() - p.rho_entrance(), 8.0, 1e-9);
  EXPECT_NEAR(p.rho_terminal() - p.rho_exit(), 20.0, 1e-9);
  const auto mid = p.eval(p.rho_entrance() + 4.0);
  expect_point(mid.point, 2.0, 0.0);
  EXPECT_NEAR(angle_diff(mid.heading, kPi / 2.0), 0.0, 1e-9);
}

TEST(PlanPath, ParallelOffsetLanesHaveNoConnector) {
  // Second lane straight across into a single lane: parallel centers 4 m apart.
  auto spec = four_way(1, 1);
  spec.forward_lanes[3] = 2;
  EXPECT_THROW(plan_path(spec, fwd(3, 2), bwd(1, 1), 10.0, 20.0), GeometryError);
}

TEST(PlanPath, RandomPathsKeepInvariants) {
  Rng rng(11);
  RandomizationConfig cfg;
  int planned = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int arms = 3 + static_cast<int>(rng.below(3));
    const auto spec = sample_intersection(arms, rng, cfg);
    const int m = static_cast<int>(rng.below(arms));
    if (spec.forward_lanes[m] == 0) continue;
    const LaneRef origin = fwd(m, 1 + static_cast<int>(rng.below(spec.forward_lanes[m])));
    const auto targets = admissible_targets(spec, origin);
    if (targets.empty()) continue;
    const LaneRef target = targets[rng.below(targets.size())];
    try {
      const Path p = plan_path(spec, origin, target, 15.0, 20.0);
      ++planned;
      EXPECT_GT(p.rho_entrance(), 0.0);
      EXPECT_LT(p.rho_entrance(), p.rho_exit());
      EXPECT_LE(p.rho_exit(), p.rho_terminal());
      const auto layout = corners_and_entrances(spec);
      const Vec2 en = layout.entrance_point(spec, origin);
      EXPECT_NEAR((p.eval(p.rho_entrance()).point - en).norm(), 0.0, 1e-6);
    } catch (const GeometryError&) {
    }
  }
  EXPECT_GT(planned, 150);
}
