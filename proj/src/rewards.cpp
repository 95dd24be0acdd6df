#include "uisim/rewards.hpp"

#include <stdexcept>

namespace uisim {

void RewardParams::validate() const {
  if (!(w_collision > 0.0 && w_separation > 0.0 && w_speed > 0.0)) {
    throw std::invalid_argument("reward weights must be positive");
  }
  if (!(w_hat > 0.0)) throw std::invalid_argument("w_hat must be positive");
  if (!(discount >= 0.0 && discount <= 1.0)) throw std::invalid_argument("discount must lie in [0,1]");
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  if (!(c_zone.forward > 0.0 && c_zone.rear > 0.0 && c_zone.width > 0.0)) {
    throw std::invalid_argument("c-zone dimensions must be positive");
  }
  for (const ZoneDims* z : {&s_zone_leader, &s_zone_follower, &s_zone_level_k}) {
    if (z->forward < c_zone.forward || z->rear < c_zone.rear || z->width < c_zone.width) {
      throw std::invalid_argument("s-zones must over-bound the c-zone");
    }
  }
  if (s_zone_leader.forward > s_zone_follower.forward || s_zone_leader.rear > s_zone_follower.rear ||
      s_zone_leader.width > s_zone_follower.width) {
    throw std::invalid_argument("leader s-zone must not exceed the follower s-zone");
  }
}

const ZoneDims& RewardParams::separation_zone(Role role) const {
  switch (role) {
    case Role::Leader: return s_zone_leader;
    case Role::Follower: return s_zone_follower;
    case Role::LevelK: return s_zone_level_k;
  }
  return s_zone_follower;
}

std::vector<double> discount_weights(const RewardParams& params) {
  std::vector<double> w(static_cast<size_t>(params.horizon));
  double d = 1.0;
  for (auto& x : w) {
    x = d;
    d *= params.discount;
  }
  return w;
}

double stage_reward(const VehicleState& s_i, const VehicleState* s_j, const RewardParams& params,
                    Role role) {
  if (s_j == nullptr) return stage_reward_from_overlaps(0.0, 0.0, s_i.v, 0.0, params);
  const ZoneDims& sz = params.separation_zone(role);
  const double s_c = overlap_area(zone_rect(s_i, params.c_zone), zone_rect(*s_j, params.c_zone));
  const double s_s = overlap_area(zone_rect(s_i, sz), zone_rect(*s_j, sz));
  return stage_reward_from_overlaps(s_c, s_s, s_i.v, s_j->v, params);
}

double cumulative_reward(const VehicleState& s_i, const VehicleState* s_j,
                         std::span<const double> gamma_i, std::span<const double> gamma_j,
                         const RewardParams& params, Role role, const MotionLimits& limits) {
  const auto n = static_cast<size_t>(params.horizon);
  if (gamma_i.size() != n || (s_j != nullptr && gamma_j.size() != n)) {
    throw std::invalid_argument("action sequence length must equal the horizon");
  }
  const auto weights = discount_weights(params);
  const auto traj_i = predict(s_i, gamma_i, limits);
  std::vector<VehicleState> traj_j;
  if (s_j != nullptr) traj_j = predict(*s_j, gamma_j, limits);
  double total = 0.0;
  for (size_t tau = 0; tau < n; ++tau) {
    total += weights[tau] *
             stage_reward(traj_i[tau], s_j != nullptr ? &traj_j[tau] : nullptr, params, role);
  }
  return total;
}

}  // namespace uisim
