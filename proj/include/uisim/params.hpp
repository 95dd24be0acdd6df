#pragma once

#include <array>
#include <numbers>
#include <string>

#include "json.hpp"
#include "uisim/kinematics.hpp"
#include "uisim/rewards.hpp"

namespace uisim {

struct DecisionConfig {
  double delta = 0.5;               // m, distance discrimination threshold
  double perception_range = 30.0;   // m
  double probe_probability = 0.25;  // deadlock probing
};

struct LevelKConfig {
  int k_max = 2;
  double belief_step = 2.0 / 3.0;
  /// Opponents entering the adaptive model's level-combination sum.
  int combination_cap = 4;
};

struct RandomizationConfig {
  std::array<double, 3> lane_count_probabilities{0.15, 0.7, 0.15};  // for 1, 2, 3 lanes
  double angle_std = std::numbers::pi / 24.0;
  double angle_bound = std::numbers::pi / 8.0;
  double d_entrance_min = 10.0;
  double d_entrance_max = 28.0;
  double v0_min = 2.0;
  double v0_max = 4.0;
  double separation = 12.0;  // minimum same-lane spacing of initial entrance distances
  int max_attempts = 100;

  void validate() const;
};

struct SimParams {
  static constexpr int kVersion = 1;

  MotionLimits limits;
  RewardParams reward;
  DecisionConfig decision;
  LevelKConfig level_k;
  RandomizationConfig randomization;
  double d_term = 20.0;  // m of target lane beyond the exit point
  int time_limit_steps = 60;

  void validate() const;
};

SimParams default_params();

/// Overlays any keys present in `j` onto `base`; unknown keys are rejected.
SimParams params_from_json(const nlohmann::json& j, SimParams base = default_params());
nlohmann::json params_to_json(const SimParams& p);

SimParams load_params_file(const std::string& path, SimParams base = default_params());

/// Defaults used by the command-line tools: compiled-in values, overlaid by
/// the file named in $UISIM_DEFAULTS when set.
SimParams resolve_defaults();

}  // namespace uisim
