#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "uisim/rewards.hpp"

using namespace uisim;
using uisim::support::bwd;
using uisim::support::four_way;
using uisim::support::fwd;

TEST(StageReward, FormulaFromOverlaps) {
  const RewardParams p;
  EXPECT_DOUBLE_EQ(stage_reward_from_overlaps(0.0, 0.0, 3.0, 1.0, p), 3.0);
  EXPECT_DOUBLE_EQ(stage_reward_from_overlaps(1.0, 2.0, 2.0, 2.0, p), -318.0);
  EXPECT_DOUBLE_EQ(stage_reward_from_overlaps(0.0, 0.5, 1.0, 0.0, p), -6.5);
}

TEST(StageReward, PenaltySign) {
  EXPECT_EQ(overlap_penalty(0.0, 3.0, 4.0, 0.25), 0.0);
  EXPECT_LE(overlap_penalty(1e-9, 0.0, 0.0, 0.25), -1.0);
}

TEST(StageReward, AloneIsSpeed) {
  const Path p = plan_path(four_way(1, 1), fwd(3), bwd(1), 20.0, 20.0);
  EXPECT_DOUBLE_EQ(stage_reward(make_state(p, 0.0, 3.0), nullptr, RewardParams{}, Role::Follower), 3.0);
}

TEST(CumulativeReward, DiscountedSpeed) {
  const auto spec = four_way(1, 1);
  const Path a = plan_path(spec, fwd(3), bwd(1), 80.0, 20.0);
  const Path b = plan_path(spec, fwd(1), bwd(3), 80.0, 20.0);
  const auto sa = make_state(a, 0.0, 3.0);
  const auto sb = make_state(b, 0.0, 3.0);
  const std::vector<double> hold{0.0, 0.0}, fast{2.0, 2.0};
  const RewardParams rp;
  const MotionLimits lim;
  EXPECT_DOUBLE_EQ(cumulative_reward(sa, &sb, hold, hold, rp, Role::Leader, lim), 3.0 + 0.6 * 3.0);
  const auto sa4 = make_state(a, 0.0, 4.0);
  EXPECT_DOUBLE_EQ(cumulative_reward(sa4, &sb, fast, hold, rp, Role::Leader, lim), 5.0 + 0.6 * 5.0);
  RewardParams myopic = rp;
  myopic.discount = 0.0;
  EXPECT_DOUBLE_EQ(cumulative_reward(sa4, &sb, fast, hold, myopic, Role::Leader, lim), 5.0);
}

TEST(CumulativeReward, LargerZoneNeverHelps) {
  const auto spec = four_way(1, 1);
  const Path a = plan_path(spec, fwd(3), bwd(1), 12.0, 20.0);
  const Path b = plan_path(spec, fwd(0), bwd(2), 12.0, 20.0);
  const RewardParams rp;
  const MotionLimits lim;
  Rng rng(4);
  const auto seqs = support::sequences_descending(lim.accelerations, rp.horizon);
  for (int k = 0; k < 200; ++k) {
    const auto sa = make_state(a, rng.uniform(0.0, 20.0), rng.uniform(0.0, 5.0));
    const auto sb = make_state(b, rng.uniform(0.0, 20.0), rng.uniform(0.0, 5.0));
    const auto& ga = seqs[rng.below(seqs.size())];
    const auto& gb = seqs[rng.below(seqs.size())];
    // Follower zones contain leader zones.
    const double follower = cumulative_reward(sa, &sb, ga, gb, rp, Role::Follower, lim);
    const double leader = cumulative_reward(sa, &sb, ga, gb, rp, Role::Leader, lim);
    EXPECT_LE(follower, leader + 1e-9 * std::abs(leader));
  }
}

TEST(RewardParams, Validation) {
  RewardParams rp;
  EXPECT_NO_THROW(rp.validate());
  rp.discount = 1.5;
  EXPECT_THROW(rp.validate(), std::invalid_argument);
  rp = RewardParams{};
  rp.s_zone_leader = ZoneDims{20.0, 4.0, 2.8};
  EXPECT_THROW(rp.validate(), std::invalid_argument);
  rp = RewardParams{};
  rp.horizon = 0;
  EXPECT_THROW(rp.validate(), std::invalid_argument);
}
