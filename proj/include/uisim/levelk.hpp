#pragma once

#include <span>
#include <vector>

#include "uisim/execution.hpp"
#include "uisim/interaction.hpp"

namespace uisim {

using Trajectory = std::vector<VehicleState>;

/// Vehicle held at its current pose with zero speed for the whole horizon.
Trajectory frozen_trajectory(const VehicleState& s, const ActionSpace& space, const MotionLimits& limits);

/// Cumulative reward of i's trajectory against several opponents: summed
/// collision and separation penalties (level-k s-zone) plus one speed term.
double multi_cumulative_reward(std::span<const VehicleState> own, std::span<const Trajectory> opponents,
                               std::span<const double> weights, const RewardParams& params);

/// multi_cumulative_reward for every own sequence, with overlaps cached by
/// position prefix. Opponent trajectories are borrowed, not copied.
std::vector<double> multi_values(const StepContext& ctx, int i, std::span<const Trajectory* const> opponents);

/// decisions[k][id] for k = 0..k_max and every active vehicle.
struct LevelKTable {
  std::vector<std::vector<ActionIndex>> decisions;

  int k_max() const { return static_cast<int>(decisions.size()) - 1; }
  ActionIndex at(int k, int id) const;
};

LevelKTable compute_levelk_table(const StepContext& ctx, int k_max, Execution policy = Execution::Serial);

/// Level-k decision of i read from the table; k outside 0..k_max is a domain error.
ActionIndex levelk_decision(const LevelKTable& table, int i, int k);

/// Same decision computed by plain recursion without sharing results.
ActionIndex levelk_decision_direct(const StepContext& ctx, int i, int k);

std::vector<double> uniform_belief(int k_max);

/// Expected reward per own sequence over opponents' level combinations.
/// The nearest `cap` neighbors enter the sum; the rest play their most
/// probable level.
std::vector<double> adaptive_values(const StepContext& ctx, const LevelKTable& table, int i,
                                    const std::vector<std::vector<double>>& beliefs, int cap);

ActionIndex adaptive_decision(const StepContext& ctx, const LevelKTable& table, int i,
                              const std::vector<std::vector<double>>& beliefs, int cap);

/// Moves `step` of probability mass toward the level whose predicted first
/// acceleration is closest to the observed one, then renormalizes.
/// Unchanged when every level predicted the same acceleration.
std::vector<double> update_belief(std::span<const double> prior, std::span<const double> predicted,
                                  double observed, double step);

}  // namespace uisim
