#pragma once

#include <optional>
#include <span>
#include <vector>

#include "uisim/kinematics.hpp"

namespace uisim {

/// Which separation-zone size the evaluating vehicle assumes for both
/// vehicles of a pair.
enum class Role { Leader, Follower, LevelK };

struct RewardParams {
  double w_collision = 100.0;
  double w_separation = 5.0;
  double w_speed = 1.0;
  double w_hat = 0.25;  // s^2/m^2
  double discount = 0.6;
  int horizon = 2;
  ZoneDims c_zone = ZoneDims::centered(6.0, 2.4);
  ZoneDims s_zone_leader{5.0, 4.0, 2.8};
  ZoneDims s_zone_follower{14.0, 4.0, 2.8};
  ZoneDims s_zone_level_k{9.5, 4.0, 2.8};

  void validate() const;
  const ZoneDims& separation_zone(Role role) const;
};

/// lambda^(tau-1) for tau = 1..N, accumulated by repeated multiplication.
std::vector<double> discount_weights(const RewardParams& params);

/// -(1 + S + w_hat*|v_i*v_j|) when S > 0, else 0. Shared form of the
/// collision and separation terms.
inline double overlap_penalty(double area, double v_i, double v_j, double w_hat) {
  return area > 0.0 ? -(1.0 + area + w_hat * std::abs(v_i * v_j)) : 0.0;
}

/// Stage reward from precomputed zone overlaps.
inline double stage_reward_from_overlaps(double s_c, double s_s, double v_i, double v_j,
                                         const RewardParams& p) {
  return p.w_collision * overlap_penalty(s_c, v_i, v_j, p.w_hat) +
         p.w_separation * overlap_penalty(s_s, v_i, v_j, p.w_hat) + p.w_speed * v_i;
}

/// Stage reward of vehicle i against j (or alone when j is absent).
double stage_reward(const VehicleState& s_i, const VehicleState* s_j, const RewardParams& params,
                    Role role);

/// Discounted sum of stage rewards over the predicted states.
double cumulative_reward(const VehicleState& s_i, const VehicleState* s_j,
                         std::span<const double> gamma_i, std::span<const double> gamma_j,
                         const RewardParams& params, Role role, const MotionLimits& limits);

}  // namespace uisim
