#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "uisim/params.hpp"
#include "uisim/rng.hpp"
#include "uisim/traffic.hpp"

namespace uisim {

/// Malformed or inadmissible scenario input.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Random sampling could not satisfy the spacing constraint.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VehicleSpec {
  LaneRef origin;
  LaneRef target;
  double d_entrance = 0.0;
  double v0 = 0.0;
  DecisionModel model;
  std::optional<double> perception_range;
  std::optional<double> probe_probability;
  bool operator==(const VehicleSpec&) const = default;
};

struct ScenarioSpec {
  IntersectionSpec intersection;
  std::vector<VehicleSpec> vehicles;
  bool operator==(const ScenarioSpec&) const = default;
};

/// Arms are 0-based; lanes are 1-based from the left of their direction.
ScenarioSpec scenario_from_json(const nlohmann::json& j);
nlohmann::ordered_json scenario_to_json(const ScenarioSpec& s);
ScenarioSpec load_scenario(const std::string& path);
void save_scenario(const ScenarioSpec& s, const std::string& path);

/// Throws ValidationError naming the first violated constraint.
void validate_scenario(const ScenarioSpec& s, const SimParams& params);

IntersectionSpec sample_intersection(int arm_count, Rng& rng, const RandomizationConfig& cfg,
                                     double lane_width = 4.0);

/// Leader-follower vehicles with random routes, distances and speeds.
std::vector<VehicleSpec> sample_vehicles(const IntersectionSpec& spec, int count, Rng& rng,
                                         const SimParams& params);

ScenarioSpec sample_scenario(int arm_count, int vehicle_count, Rng& rng, const SimParams& params);

/// Initial traffic: paths planned so that rho(0) = 0 lies d_entrance ahead
/// of the entrance point.
Traffic build_world(const ScenarioSpec& s, const SimParams& params);

}  // namespace uisim
