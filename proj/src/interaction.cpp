#include "uisim/interaction.hpp"

#include <algorithm>
#include <limits>

namespace uisim {

bool approaches_from_right(int arm_i, int arm_j, int arm_count) {
  return arm_count > 2 && arm_i == (arm_j + 1) % arm_count;
}

RoleRelation assign_role(const VehicleState& s_i, const VehicleState& s_j, Maneuver m_i, Maneuver m_j,
                         int arm_i, int arm_j, int arm_count, double delta) {
  if (s_i.entered() && s_j.entered()) {
    if (s_i.d_exit < s_j.d_exit - delta) return RoleRelation::Leads;
  } else if (s_i.d_entrance < s_j.d_entrance - delta) {
    return RoleRelation::Leads;
  }
  // Rules 3 and 4 apply only when the distance rules leave the pair undecided.
  const bool distance_decided = s_i.entered() && s_j.entered()
                                    ? std::abs(s_i.d_exit - s_j.d_exit) > delta
                                    : std::abs(s_i.d_entrance - s_j.d_entrance) > delta;
  if (distance_decided) return RoleRelation::NotLeader;
  if (approaches_from_right(arm_i, arm_j, arm_count)) return RoleRelation::Leads;
  if (approaches_from_right(arm_j, arm_i, arm_count)) return RoleRelation::NotLeader;
  if (m_i == Maneuver::Straight && m_j != Maneuver::Straight) return RoleRelation::Leads;
  return RoleRelation::NotLeader;
}

RoleRelation assign_role(const Traffic& traffic, int i, int j, double delta) {
  const Vehicle& a = traffic.vehicles[i];
  const Vehicle& b = traffic.vehicles[j];
  return assign_role(a.state, b.state, a.maneuver(), b.maneuver(), a.arm(), b.arm(),
                     traffic.spec.arm_count, delta);
}

std::vector<int> perceive(const Traffic& traffic, int i) {
  std::vector<int> out;
  const Vehicle& me = traffic.vehicles[i];
  for (const Vehicle& other : traffic.vehicles) {
    if (other.id == i || !other.active) continue;
    if ((other.state.position() - me.state.position()).norm() <= me.perception_range) {
      out.push_back(other.id);
    }
  }
  return out;
}

std::vector<double> courteous_set(const Traffic& traffic, int i, std::span<const int> neighbors,
                                  const SimParams& params) {
  // A position update uses the previous speed, so an acceleration first
  // moves the vehicle on the second step; both steps are checked.
  const auto& limits = params.limits;
  const auto& cz = params.reward.c_zone;
  std::vector<OrientedRect> held_1, held_2;
  for (int j : neighbors) {
    const auto s1 = advance(traffic.vehicles[j].state, 0.0, limits);
    held_1.push_back(zone_rect(s1, cz));
    held_2.push_back(zone_rect(advance(s1, 0.0, limits), cz));
  }
  const auto clear_of = [](const OrientedRect& mine, const std::vector<OrientedRect>& others) {
    return std::none_of(others.begin(), others.end(),
                        [&](const OrientedRect& r) { return overlap_area(mine, r) > 0.0; });
  };
  const VehicleState& me = traffic.vehicles[i].state;
  const bool first_clear = clear_of(zone_rect(advance(me, 0.0, limits), cz), held_1);
  std::vector<double> out;
  for (double a : limits.accelerations) {
    if (a == limits.min_acceleration()) {
      out.push_back(a);
      continue;
    }
    if (!first_clear) continue;
    const auto s1 = advance(me, a, limits);
    if (clear_of(zone_rect(advance(s1, 0.0, limits), cz), held_2)) out.push_back(a);
  }
  return out;
}

StepContext::StepContext(const Traffic& traffic, const SimParams& params)
    : traffic_(&traffic),
      params_(&params),
      space_(params.limits.accelerations, params.reward.horizon),
      weights_(discount_weights(params.reward)) {
  const size_t n = traffic.vehicles.size();
  neighbors_.resize(n);
  courteous_.resize(n);
  masks_.resize(n);
  trajectories_.resize(n);
  for (const Vehicle& v : traffic.vehicles) {
    if (!v.active) continue;
    const int i = v.id;
    neighbors_[i] = perceive(traffic, i);
    courteous_[i] = courteous_set(traffic, i, neighbors_[i], params);
    masks_[i].assign(space_.size(), 0);
    trajectories_[i].resize(space_.size());
    for (ActionIndex g = 0; g < space_.size(); ++g) {
      const double first = space_.first(g);
      masks_[i][g] = std::find(courteous_[i].begin(), courteous_[i].end(), first) != courteous_[i].end();
      trajectories_[i][g] = predict(v.state, space_.sequence(g), params.limits);
    }
  }
}

namespace {

/// Zone overlaps of a pair keyed by the position prefixes of both vehicles.
std::vector<std::vector<double>> prefix_overlaps(const StepContext& ctx, int i, int j, const ZoneDims& zone) {
  const auto& space = ctx.space();
  std::vector<std::vector<double>> out(static_cast<size_t>(space.horizon()));
  for (int tau = 1; tau <= space.horizon(); ++tau) {
    const size_t count = space.position_prefix_count(tau);
    auto& table = out[tau - 1];
    table.assign(count * count, 0.0);
    // A representative sequence for prefix p is any g with position_prefix(g) == p.
    const size_t stride = space.size() / count;
    for (size_t pi = 0; pi < count; ++pi) {
      const auto rect_i = zone_rect(ctx.trajectory(i, static_cast<ActionIndex>(pi * stride))[tau - 1], zone);
      for (size_t pj = 0; pj < count; ++pj) {
        const auto rect_j = zone_rect(ctx.trajectory(j, static_cast<ActionIndex>(pj * stride))[tau - 1], zone);
        table[pi * count + pj] = overlap_area(rect_i, rect_j);
      }
    }
  }
  return out;
}

}  // namespace

RewardTable pair_reward_table(const StepContext& ctx, int i, int j, Role role) {
  const auto& space = ctx.space();
  const auto& rp = ctx.params().reward;
  const auto c = prefix_overlaps(ctx, i, j, rp.c_zone);
  const auto s = prefix_overlaps(ctx, i, j, rp.separation_zone(role));
  const auto& w = ctx.weights();
  RewardTable table(space.size(), space.size());
  for (ActionIndex gi = 0; gi < space.size(); ++gi) {
    const auto& ti = ctx.trajectory(i, gi);
    for (ActionIndex gj = 0; gj < space.size(); ++gj) {
      const auto& tj = ctx.trajectory(j, gj);
      double total = 0.0;
      for (int tau = 1; tau <= space.horizon(); ++tau) {
        const size_t count = space.position_prefix_count(tau);
        const size_t key = space.position_prefix(gi, tau) * count + space.position_prefix(gj, tau);
        total += w[tau - 1] * stage_reward_from_overlaps(c[tau - 1][key], s[tau - 1][key], ti[tau - 1].v,
                                                         tj[tau - 1].v, rp);
      }
      table.at(gi, gj) = total;
    }
  }
  return table;
}

std::vector<double> q_follower(const StepContext& ctx, int i, int j) {
  return secured_values(pair_reward_table(ctx, i, j, Role::Follower));
}

std::vector<double> q_leader(const StepContext& ctx, int i, int j) {
  const auto follower = pair_reward_table(ctx, j, i, Role::Follower);
  const size_t reply = preferred_argmax(secured_values(follower));
  const auto leader = pair_reward_table(ctx, i, j, Role::Leader);
  std::vector<double> out(leader.rows);
  for (size_t r = 0; r < leader.rows; ++r) out[r] = leader.at(r, reply);
  return out;
}

std::vector<double> solo_values(const StepContext& ctx, int i) {
  const auto& space = ctx.space();
  const auto& rp = ctx.params().reward;
  const auto& w = ctx.weights();
  std::vector<double> out(space.size());
  for (ActionIndex g = 0; g < space.size(); ++g) {
    const auto& traj = ctx.trajectory(i, g);
    double total = 0.0;
    for (int tau = 1; tau <= space.horizon(); ++tau) {
      total += w[tau - 1] * stage_reward_from_overlaps(0.0, 0.0, traj[tau - 1].v, 0.0, rp);
    }
    out[g] = total;
  }
  return out;
}

ActionIndex decide_lf(const StepContext& ctx, int i) {
  const auto& neighbors = ctx.neighbors(i);
  if (neighbors.empty()) {
    return static_cast<ActionIndex>(preferred_argmax(solo_values(ctx, i), ctx.sequence_mask(i)));
  }
  std::vector<double> worst(ctx.space().size(), std::numeric_limits<double>::infinity());
  const double delta = ctx.params().decision.delta;
  for (int j : neighbors) {
    const auto q = assign_role(ctx.traffic(), i, j, delta) == RoleRelation::Leads ? q_leader(ctx, i, j)
                                                                                    : q_follower(ctx, i, j);
    for (size_t g = 0; g < q.size(); ++g) worst[g] = std::min(worst[g], q[g]);
  }
  return static_cast<ActionIndex>(preferred_argmax(worst, ctx.sequence_mask(i)));
}

std::vector<int> conflict_set(const Traffic& traffic) {
  // Lane heads keyed by (arm, lane index).
  std::vector<int> head;
  for (const Vehicle& v : traffic.vehicles) {
    if (!v.active || v.state.d_exit <= 0.0) continue;
    auto it = std::find_if(head.begin(), head.end(), [&](int h) {
      return traffic.vehicles[h].path->origin() == v.path->origin();
    });
    if (it == head.end()) {
      head.push_back(v.id);
    } else if (v.state.d_entrance < traffic.vehicles[*it].state.d_entrance) {
      *it = v.id;
    }
  }
  std::sort(head.begin(), head.end());
  return head;
}

DeadlockOutcome break_deadlocks(const StepContext& ctx, std::vector<double>& accel, Rng& rng) {
  DeadlockOutcome out;
  const Traffic& traffic = ctx.traffic();
  out.conflict = conflict_set(traffic);
  if (out.conflict.empty()) return out;
  // Sampled initial speeds are not multiples of the acceleration step, so a
  // vehicle can settle on a crawl just above zero; moving less than the
  // distance threshold per step counts as stopped.
  const double crawl = ctx.params().decision.delta / ctx.params().limits.dt;
  for (int i : out.conflict) {
    if (traffic.vehicles[i].state.v >= crawl || accel[i] != 0.0) return out;
  }
  out.triggered = true;
  for (int i : out.conflict) {
    const double draw = rng.uniform01();
    const auto& allowed = ctx.courteous(i);
    const auto positive = std::find_if(allowed.begin(), allowed.end(), [](double a) { return a > 0.0; });
    if (positive == allowed.end()) continue;
    if (draw < traffic.vehicles[i].probe_probability) {
      accel[i] = *positive;
      out.probed.push_back(i);
    }
  }
  return out;
}

}  // namespace uisim
