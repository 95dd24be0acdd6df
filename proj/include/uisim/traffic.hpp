#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "uisim/geometry.hpp"
#include "uisim/kinematics.hpp"

namespace uisim {

enum class ModelKind { LeaderFollower, LevelK, AdaptiveLevelK };

struct DecisionModel {
  ModelKind kind = ModelKind::LeaderFollower;
  int level = 0;  // used by ModelKind::LevelK
  bool operator==(const DecisionModel&) const = default;
};

std::string to_string(const DecisionModel& m);

struct Vehicle {
  int id = 0;
  std::shared_ptr<const Path> path;
  VehicleState state;
  DecisionModel model;
  double perception_range = 30.0;
  double probe_probability = 0.25;
  bool active = true;
  std::optional<double> completion_time;
  /// Adaptive vehicles only: belief over levels 0..k_max for every vehicle id.
  std::vector<std::vector<double>> beliefs;

  int arm() const { return path->origin().arm; }
  Maneuver maneuver() const { return path->maneuver(); }
};

struct Traffic {
  IntersectionSpec spec;
  std::vector<Vehicle> vehicles;
  int t = 0;

  std::vector<int> active_ids() const;
};

}  // namespace uisim
