#pragma once

#include <span>
#include <vector>

#include "uisim/game.hpp"
#include "uisim/params.hpp"
#include "uisim/rng.hpp"
#include "uisim/traffic.hpp"

namespace uisim {

enum class RoleRelation { Leads, NotLeader };

/// True when a vehicle on `arm_i` approaches from the right-hand side of a
/// vehicle on `arm_j` (the next arm counter-clockwise).
bool approaches_from_right(int arm_i, int arm_j, int arm_count);

RoleRelation assign_role(const VehicleState& s_i, const VehicleState& s_j, Maneuver m_i, Maneuver m_j,
                         int arm_i, int arm_j, int arm_count, double delta);
RoleRelation assign_role(const Traffic& traffic, int i, int j, double delta);

/// Active vehicles other than i within i's perception range.
std::vector<int> perceive(const Traffic& traffic, int i);

/// Accelerations (ascending) that keep i's c-zone clear of every neighbor
/// until the acceleration has moved i, while the neighbors hold their
/// speed; min(A) is always kept.
std::vector<double> courteous_set(const Traffic& traffic, int i, std::span<const int> neighbors,
                                  const SimParams& params);

/// Immutable per-step data shared by every decision of the step.
class StepContext {
 public:
  StepContext(const Traffic& traffic, const SimParams& params);

  const Traffic& traffic() const { return *traffic_; }
  const SimParams& params() const { return *params_; }
  const ActionSpace& space() const { return space_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<int>& neighbors(int i) const { return neighbors_[i]; }
  const std::vector<double>& courteous(int i) const { return courteous_[i]; }
  /// Mask over Gamma admitting sequences whose first acceleration is courteous.
  const std::vector<char>& sequence_mask(int i) const { return masks_[i]; }
  /// Predicted states s(1|t)..s(N|t) of vehicle i under sequence g.
  const std::vector<VehicleState>& trajectory(int i, ActionIndex g) const { return trajectories_[i][g]; }

 private:
  const Traffic* traffic_;
  const SimParams* params_;
  ActionSpace space_;
  std::vector<double> weights_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::vector<double>> courteous_;
  std::vector<std::vector<char>> masks_;
  std::vector<std::vector<std::vector<VehicleState>>> trajectories_;
};

/// R[g_i][g_j]: i's cumulative reward with both vehicles using the s-zone of
/// `role`, over the full action space.
RewardTable pair_reward_table(const StepContext& ctx, int i, int j, Role role);

/// Secured (maximin) values of i as follower of j, per own sequence.
std::vector<double> q_follower(const StepContext& ctx, int i, int j);
/// Predicted values of i as leader of j, per own sequence.
std::vector<double> q_leader(const StepContext& ctx, int i, int j);

/// Pure speed reward of each sequence (no neighbors).
std::vector<double> solo_values(const StepContext& ctx, int i);

/// Pairwise leader-follower decision of vehicle i.
ActionIndex decide_lf(const StepContext& ctx, int i);

struct DeadlockOutcome {
  bool triggered = false;
  std::vector<int> conflict;
  std::vector<int> probed;
};

/// Vehicles that head their origin lane and have not yet left the
/// intersection, ascending by id.
std::vector<int> conflict_set(const Traffic& traffic);

/// Exploratory probing when every conflicting vehicle is stopped (moves less
/// than delta per step) and chose zero acceleration. `accel` is indexed by vehicle id and updated in place.
DeadlockOutcome break_deadlocks(const StepContext& ctx, std::vector<double>& accel, Rng& rng);

}  // namespace uisim
