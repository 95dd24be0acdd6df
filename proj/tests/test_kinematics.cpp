#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "uisim/kinematics.hpp"

using namespace uisim;
using uisim::support::bwd;
using uisim::support::four_way;
using uisim::support::fwd;

namespace {

Path straight_path() { return plan_path(four_way(1, 1), fwd(3), bwd(1), 30.0, 20.0); }

}  // namespace

TEST(Advance, ClampsAtMaximumSpeed) {
  const Path p = straight_path();
  const auto s = advance(make_state(p, 0.0, 4.0), 2.0, MotionLimits{});
  EXPECT_DOUBLE_EQ(s.rho, 4.0);
  EXPECT_DOUBLE_EQ(s.v, 5.0);
}

TEST(Advance, ClampsAtZero) {
  const Path p = straight_path();
  const auto s = advance(make_state(p, 10.0, 1.0), -4.0, MotionLimits{});
  EXPECT_DOUBLE_EQ(s.rho, 11.0);
  EXPECT_DOUBLE_EQ(s.v, 0.0);
}

TEST(Advance, ConstantSpeed) {
  const Path p = straight_path();
  const auto s = advance(make_state(p, 5.0, 3.0), 0.0, MotionLimits{});
  EXPECT_DOUBLE_EQ(s.rho, 8.0);
  EXPECT_DOUBLE_EQ(s.v, 3.0);
  EXPECT_DOUBLE_EQ(s.d_entrance, p.rho_entrance() - 8.0);
  EXPECT_DOUBLE_EQ(s.d_exit, p.rho_exit() - 8.0);
}

TEST(Predict, HandIterations) {
  const Path p = straight_path();
  const MotionLimits lim;
  const std::vector<double> hold{0.0, 0.0}, fast{2.0, 2.0}, brake{-4.0, 2.0};
  auto t = predict(make_state(p, 0.0, 3.0), hold, lim);
  EXPECT_DOUBLE_EQ(t[0].rho, 3.0);
  EXPECT_DOUBLE_EQ(t[1].rho, 6.0);
  t = predict(make_state(p, 0.0, 4.0), fast, lim);
  EXPECT_DOUBLE_EQ(t[0].v, 5.0);
  EXPECT_DOUBLE_EQ(t[1].v, 5.0);
  EXPECT_DOUBLE_EQ(t[0].rho, 4.0);
  EXPECT_DOUBLE_EQ(t[1].rho, 9.0);
  t = predict(make_state(p, 0.0, 2.0), brake, lim);
  EXPECT_DOUBLE_EQ(t[0].v, 0.0);
  EXPECT_DOUBLE_EQ(t[1].v, 2.0);
  EXPECT_DOUBLE_EQ(t[0].rho, 2.0);
  EXPECT_DOUBLE_EQ(t[1].rho, 2.0);
}

TEST(Predict, EqualsRepeatedAdvance) {
  const Path p = plan_path(four_way(1, 1), fwd(3), bwd(2), 12.0, 20.0);
  const MotionLimits lim;
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    const auto s0 = make_state(p, rng.uniform(0.0, 30.0), rng.uniform(0.0, 5.0));
    std::vector<double> seq;
    for (int tau = 0; tau < 4; ++tau) seq.push_back(lim.accelerations[rng.below(4)]);
    const auto traj = predict(s0, seq, lim);
    VehicleState s = s0;
    for (int tau = 0; tau < 4; ++tau) {
      s = advance(s, seq[tau], lim);
      EXPECT_EQ(s.rho, traj[tau].rho);
      EXPECT_EQ(s.v, traj[tau].v);
      EXPECT_EQ(s.x, traj[tau].x);
      EXPECT_GE(s.v, lim.v_min);
      EXPECT_LE(s.v, lim.v_max);
    }
  }
}

TEST(Limits, Validation) {
  MotionLimits lim;
  lim.accelerations = {-2.0, 2.0};
  EXPECT_THROW(lim.validate(), std::invalid_argument);
  lim.accelerations = {0.0, -2.0};
  EXPECT_THROW(lim.validate(), std::invalid_argument);
  lim = MotionLimits{};
  lim.dt = 0.0;
  EXPECT_THROW(lim.validate(), std::invalid_argument);
}

TEST(ZoneRect, CollisionZoneExtent) {
  const auto r = zone_rect(Vec2{0.0, 0.0}, 0.0, ZoneDims::centered(6.0, 2.4));
  for (const auto& c : r.corners()) {
    EXPECT_NEAR(std::abs(c.x), 3.0, 1e-12);
    EXPECT_NEAR(std::abs(c.y), 1.2, 1e-12);
  }
}

TEST(ZoneRect, FollowerSeparationZoneExtent) {
  const auto r = zone_rect(Vec2{0.0, 0.0}, 0.0, ZoneDims{14.0, 4.0, 2.8});
  double lo = 1e9, hi = -1e9;
  for (const auto& c : r.corners()) {
    lo = std::min(lo, c.x);
    hi = std::max(hi, c.x);
    EXPECT_NEAR(std::abs(c.y), 1.4, 1e-12);
  }
  EXPECT_NEAR(lo, -4.0, 1e-12);
  EXPECT_NEAR(hi, 14.0, 1e-12);
}

TEST(ZoneRect, QuarterTurnSquare) {
  const auto r = zone_rect(Vec2{1.0, 1.0}, std::numbers::pi / 2.0, ZoneDims{1.0, 1.0, 2.0});
  for (const auto& c : r.corners()) {
    EXPECT_NEAR(std::min(std::abs(c.x), std::abs(c.x - 2.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::min(std::abs(c.y), std::abs(c.y - 2.0)), 0.0, 1e-12);
  }
}

TEST(Overlap, AxisAlignedShift) {
  const OrientedRect a{{0.0, 0.0}, 0.0, 2.0, 2.0, 2.0};
  const OrientedRect b{{1.0, 0.0}, 0.0, 2.0, 2.0, 2.0};
  EXPECT_NEAR(overlap_area(a, b), 6.0, 1e-12);
}

TEST(Overlap, CrossedRectangles) {
  const OrientedRect a{{0.0, 0.0}, 0.0, 2.0, 2.0, 2.0};
  const OrientedRect b{{0.0, 0.0}, std::numbers::pi / 2.0, 2.0, 2.0, 2.0};
  EXPECT_NEAR(overlap_area(a, b), 4.0, 1e-12);
}

TEST(Overlap, DiagonalAgainstMonteCarlo) {
  const OrientedRect a{{0.0, 0.0}, 0.0, 2.0, 2.0, 2.0};
  const OrientedRect b{{0.0, 0.0}, std::numbers::pi / 4.0, 2.0, 2.0, 2.0};
  Rng rng(3);
  const double mc = support::monte_carlo_overlap(a, b, 1'000'000, rng);
  EXPECT_NEAR(overlap_area(a, b), mc, 1e-2 * mc);
}

TEST(Overlap, DisjointIsZero) {
  const OrientedRect a{{0.0, 0.0}, 0.3, 2.0, 2.0, 2.0};
  const OrientedRect b{{10.0, 0.0}, 1.0, 2.0, 2.0, 2.0};
  EXPECT_EQ(overlap_area(a, b), 0.0);
}

TEST(Overlap, SymmetricBoundedAndRigid) {
  Rng rng(17);
  for (int k = 0; k < 500; ++k) {
    auto rect = [&] {
      return OrientedRect{{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)}, rng.uniform(0.0, 6.3),
                          rng.uniform(0.5, 8.0), rng.uniform(0.5, 5.0), rng.uniform(0.5, 3.0)};
    };
    const auto a = rect();
    const auto b = rect();
    const double s = overlap_area(a, b);
    EXPECT_EQ(s, overlap_area(b, a));
    EXPECT_LE(s, std::min(a.area(), b.area()) * (1.0 + 1e-12));
    const double phi = rng.uniform(0.0, 6.3);
    const Vec2 shift{rng.uniform(-50.0, 50.0), rng.uniform(-50.0, 50.0)};
    auto move = [&](OrientedRect r) {
      const Vec2 c = r.center;
      r.center = Vec2{c.x * std::cos(phi) - c.y * std::sin(phi), c.x * std::sin(phi) + c.y * std::cos(phi)} + shift;
      r.heading += phi;
      return r;
    };
    EXPECT_NEAR(overlap_area(move(a), move(b)), s, 1e-9 * std::max(1.0, s));
  }
}

TEST(Overlap, AgreesWithMonteCarloOnRandomPairs) {
  Rng rng(23);
  Rng mc_rng(29);
  for (int k = 0; k < 100; ++k) {
    const OrientedRect a{{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)}, rng.uniform(0.0, 6.3),
                         rng.uniform(1.0, 8.0), rng.uniform(1.0, 5.0), rng.uniform(1.0, 3.0)};
    const OrientedRect b{{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)}, rng.uniform(0.0, 6.3),
                         rng.uniform(1.0, 8.0), rng.uniform(1.0, 5.0), rng.uniform(1.0, 3.0)};
    const double exact = overlap_area(a, b);
    const double mc = support::monte_carlo_overlap(a, b, 200'000, mc_rng);
    EXPECT_NEAR(exact, mc, std::max(3e-2 * exact, 1e-2)) << "pair " << k;
  }
}
