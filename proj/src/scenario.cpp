#include "uisim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include <fmt/format.h>

namespace uisim {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ValidationError(fmt::format("{}: missing '{}'", where, key));
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(fmt::format("{}: '{}' has the wrong type", where, key));
  }
}

DecisionModel model_from_json(const json& v, const std::string& where) {
  const auto name = v.contains("model") ? field<std::string>(v, "model", where) : std::string("leader_follower");
  if (name == "leader_follower") return {ModelKind::LeaderFollower, 0};
  if (name == "adaptive_level_k") return {ModelKind::AdaptiveLevelK, 0};
  if (name == "level_k") return {ModelKind::LevelK, field<int>(v, "level", where)};
  throw ValidationError(fmt::format("{}: unknown model '{}'", where, name));
}

}  // namespace

std::string to_string(const DecisionModel& m) {
  switch (m.kind) {
    case ModelKind::LeaderFollower: return "leader_follower";
    case ModelKind::LevelK: return fmt::format("level_k({})", m.level);
    case ModelKind::AdaptiveLevelK: return "adaptive_level_k";
  }
  return "?";
}

std::vector<int> Traffic::active_ids() const {
  std::vector<int> out;
  for (const auto& v : vehicles) {
    if (v.active) out.push_back(v.id);
  }
  return out;
}

ScenarioSpec scenario_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("scenario must be a JSON object");
  ScenarioSpec s;
  const json& x = j.contains("intersection") ? j.at("intersection") : throw ValidationError("missing 'intersection'");
  s.intersection.arm_count = field<int>(x, "N", "intersection");
  s.intersection.forward_lanes = field<std::vector<int>>(x, "M_f", "intersection");
  s.intersection.backward_lanes = field<std::vector<int>>(x, "M_b", "intersection");
  s.intersection.phi = field<std::vector<double>>(x, "phi", "intersection");
  if (x.contains("w_lane")) s.intersection.lane_width = field<double>(x, "w_lane", "intersection");
  const json vehicles = j.contains("vehicles") ? j.at("vehicles") : json::array();
  if (!vehicles.is_array()) throw ValidationError("'vehicles' must be an array");
  for (size_t k = 0; k < vehicles.size(); ++k) {
    const json& v = vehicles[k];
    const std::string where = fmt::format("vehicle {}", k);
    VehicleSpec vs;
    const json origin = field<json>(v, "origin", where);
    const json target = field<json>(v, "target", where);
    vs.origin = {field<int>(origin, "arm", where + " origin"), LaneDirection::Forward,
                 field<int>(origin, "lane", where + " origin")};
    vs.target = {field<int>(target, "arm", where + " target"), LaneDirection::Backward,
                 field<int>(target, "lane", where + " target")};
    vs.d_entrance = field<double>(v, "d_entrance", where);
    vs.v0 = field<double>(v, "v0", where);
    vs.model = model_from_json(v, where);
    if (v.contains("params")) {
      const json& p = v.at("params");
      for (const auto& [key, _] : p.items()) {
        if (key != "perception_range" && key != "probe_probability") {
          throw ValidationError(fmt::format("{}: unknown vehicle parameter '{}'", where, key));
        }
      }
      if (p.contains("perception_range")) vs.perception_range = field<double>(p, "perception_range", where);
      if (p.contains("probe_probability")) vs.probe_probability = field<double>(p, "probe_probability", where);
    }
    s.vehicles.push_back(vs);
  }
  return s;
}

ordered_json scenario_to_json(const ScenarioSpec& s) {
  ordered_json j;
  j["intersection"] = {{"N", s.intersection.arm_count},
                       {"M_f", s.intersection.forward_lanes},
                       {"M_b", s.intersection.backward_lanes},
                       {"phi", s.intersection.phi},
                       {"w_lane", s.intersection.lane_width}};
  j["vehicles"] = ordered_json::array();
  for (const auto& v : s.vehicles) {
    ordered_json o;
    o["origin"] = {{"arm", v.origin.arm}, {"lane", v.origin.index}};
    o["target"] = {{"arm", v.target.arm}, {"lane", v.target.index}};
    o["d_entrance"] = v.d_entrance;
    o["v0"] = v.v0;
    switch (v.model.kind) {
      case ModelKind::LeaderFollower: o["model"] = "leader_follower"; break;
      case ModelKind::LevelK:
        o["model"] = "level_k";
        o["level"] = v.model.level;
        break;
      case ModelKind::AdaptiveLevelK: o["model"] = "adaptive_level_k"; break;
    }
    if (v.perception_range || v.probe_probability) {
      ordered_json p = ordered_json::object();
      if (v.perception_range) p["perception_range"] = *v.perception_range;
      if (v.probe_probability) p["probe_probability"] = *v.probe_probability;
      o["params"] = p;
    }
    j["vehicles"].push_back(o);
  }
  return j;
}

ScenarioSpec load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open scenario '{}'", path));
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError(fmt::format("scenario '{}': {}", path, e.what()));
  }
  return scenario_from_json(j);
}

void save_scenario(const ScenarioSpec& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  out << scenario_to_json(s).dump(2) << '\n';
}

void validate_scenario(const ScenarioSpec& s, const SimParams& params) {
  try {
    s.intersection.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(fmt::format("intersection: {}", e.what()));
  }
  const auto& spec = s.intersection;
  for (size_t k = 0; k < s.vehicles.size(); ++k) {
    const auto& v = s.vehicles[k];
    const auto check_lane = [&](const LaneRef& lane, const char* what) {
      if (lane.arm < 0 || lane.arm >= spec.arm_count) {
        throw ValidationError(fmt::format("vehicle {}: {} arm {} does not exist", k, what, lane.arm));
      }
      const int count = lane.direction == LaneDirection::Forward ? spec.forward_lanes[lane.arm]
                                                                 : spec.backward_lanes[lane.arm];
      if (lane.index < 1 || lane.index > count) {
        throw ValidationError(fmt::format("vehicle {}: {} lane {} does not exist on arm {}", k, what,
                                          lane.index, lane.arm));
      }
    };
    check_lane(v.origin, "origin");
    check_lane(v.target, "target");
    if (v.origin.arm == v.target.arm) throw ValidationError(fmt::format("vehicle {}: U-turns are not supported", k));
    if (const auto rule = violated_lane_rule(spec, v.origin, v.target)) {
      throw ValidationError(fmt::format("vehicle {}: lane rule {} violated ({} from lane {} of arm {})", k,
                                        *rule, to_string(classify_maneuver(spec, v.origin.arm, v.target.arm)),
                                        v.origin.index, v.origin.arm));
    }
    if (!(v.d_entrance > 0.0)) throw ValidationError(fmt::format("vehicle {}: d_entrance must be positive", k));
    if (v.v0 < params.limits.v_min || v.v0 > params.limits.v_max) {
      throw ValidationError(fmt::format("vehicle {}: v0 outside [{}, {}]", k, params.limits.v_min, params.limits.v_max));
    }
    if (v.model.kind == ModelKind::LevelK && (v.model.level < 0 || v.model.level > params.level_k.k_max)) {
      throw ValidationError(fmt::format("vehicle {}: level {} outside 0..{}", k, v.model.level, params.level_k.k_max));
    }
    if (v.perception_range && !(*v.perception_range > 0.0)) {
      throw ValidationError(fmt::format("vehicle {}: perception_range must be positive", k));
    }
    if (v.probe_probability && (*v.probe_probability < 0.0 || *v.probe_probability > 1.0)) {
      throw ValidationError(fmt::format("vehicle {}: probe_probability outside [0,1]", k));
    }
  }
}

IntersectionSpec sample_intersection(int arm_count, Rng& rng, const RandomizationConfig& cfg, double lane_width) {
  if (arm_count < 3 || arm_count > 5) throw std::invalid_argument("arm count must be 3, 4 or 5");
  IntersectionSpec spec;
  spec.arm_count = arm_count;
  spec.lane_width = lane_width;
  for (int m = 0; m < arm_count; ++m) {
    spec.forward_lanes.push_back(1 + static_cast<int>(rng.categorical(cfg.lane_count_probabilities)));
    spec.backward_lanes.push_back(1 + static_cast<int>(rng.categorical(cfg.lane_count_probabilities)));
  }
  for (int m = 0; m < arm_count; ++m) {
    const double nominal = 2.0 * m * std::numbers::pi / arm_count;
    spec.phi.push_back(rng.truncated_normal(nominal, cfg.angle_std, cfg.angle_bound));
  }
  return spec;
}

namespace {

/// Admissible targets grouped by arm, excluding those without a feasible path.
std::vector<std::vector<LaneRef>> feasible_targets(const IntersectionSpec& spec, const IntersectionLayout& layout,
                                                   const LaneRef& origin, const SimParams& params) {
  std::vector<std::vector<LaneRef>> by_arm;
  for (const auto& t : admissible_targets(spec, origin)) {
    try {
      plan_path(spec, layout, origin, t, params.randomization.d_entrance_max, params.d_term);
    } catch (const GeometryError&) {
      continue;
    }
    if (by_arm.empty() || by_arm.back().front().arm != t.arm) by_arm.emplace_back();
    by_arm.back().push_back(t);
  }
  return by_arm;
}

}  // namespace

std::vector<VehicleSpec> sample_vehicles(const IntersectionSpec& spec, int count, Rng& rng, const SimParams& params) {
  if (count < 0) throw std::invalid_argument("vehicle count must be non-negative");
  const auto& cfg = params.randomization;
  const auto layout = corners_and_entrances(spec);
  std::vector<int> origin_arms;
  for (int m = 0; m < spec.arm_count; ++m) {
    if (spec.forward_lanes[m] >= 1) origin_arms.push_back(m);
  }
  // Origins whose feasible target set is empty are redrawn.
  // targets[arm][lane - 1] groups feasible target lanes by target arm.
  using Grouped = std::vector<std::vector<LaneRef>>;
  std::vector<std::vector<Grouped>> targets(spec.arm_count);
  bool any = false;
  for (int m : origin_arms) {
    for (int lane = 1; lane <= spec.forward_lanes[m]; ++lane) {
      targets[m].push_back(feasible_targets(spec, layout, {m, LaneDirection::Forward, lane}, params));
      any = any || !targets[m].back().empty();
    }
  }
  if (!any) throw GenerationError("no origin lane has a feasible target");

  std::vector<VehicleSpec> out;
  for (int k = 0; k < count; ++k) {
    VehicleSpec v;
    for (;;) {
      const int arm = origin_arms[rng.below(origin_arms.size())];
      const int lane = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.forward_lanes[arm])));
      const auto& by_arm = targets[arm][lane - 1];
      if (by_arm.empty()) continue;
      const auto& lanes = by_arm[rng.below(by_arm.size())];
      v.origin = {arm, LaneDirection::Forward, lane};
      v.target = lanes[rng.below(lanes.size())];
      break;
    }
    v.v0 = rng.uniform(cfg.v0_min, cfg.v0_max);
    bool placed = false;
    for (int attempt = 0; attempt < cfg.max_attempts && !placed; ++attempt) {
      v.d_entrance = rng.uniform(cfg.d_entrance_min, cfg.d_entrance_max);
      placed = std::none_of(out.begin(), out.end(), [&](const VehicleSpec& o) {
        return o.origin == v.origin && std::abs(o.d_entrance - v.d_entrance) <= cfg.separation;
      });
    }
    if (!placed) {
      throw GenerationError(fmt::format("vehicle {}: no entrance distance {} m clear of its lane after {} attempts",
                                        k, cfg.separation, cfg.max_attempts));
    }
    out.push_back(v);
  }
  return out;
}

ScenarioSpec sample_scenario(int arm_count, int vehicle_count, Rng& rng, const SimParams& params) {
  ScenarioSpec s;
  s.intersection = sample_intersection(arm_count, rng, params.randomization);
  s.vehicles = sample_vehicles(s.intersection, vehicle_count, rng, params);
  return s;
}

Traffic build_world(const ScenarioSpec& s, const SimParams& params) {
  validate_scenario(s, params);
  Traffic traffic;
  traffic.spec = s.intersection;
  const auto layout = corners_and_entrances(s.intersection);
  for (size_t k = 0; k < s.vehicles.size(); ++k) {
    const auto& vs = s.vehicles[k];
    Vehicle v;
    v.id = static_cast<int>(k);
    try {
      v.path = std::make_shared<const Path>(plan_path(s.intersection, layout, vs.origin, vs.target, vs.d_entrance,
                                                      params.d_term));
    } catch (const GeometryError& e) {
      throw ValidationError(fmt::format("vehicle {}: {}", k, e.what()));
    }
    v.state = make_state(*v.path, 0.0, vs.v0);
    v.model = vs.model;
    v.perception_range = vs.perception_range.value_or(params.decision.perception_range);
    v.probe_probability = vs.probe_probability.value_or(params.decision.probe_probability);
    if (v.model.kind == ModelKind::AdaptiveLevelK) {
      v.beliefs.assign(s.vehicles.size(), std::vector<double>(static_cast<size_t>(params.level_k.k_max + 1),
                                                              1.0 / (params.level_k.k_max + 1)));
    }
    traffic.vehicles.push_back(std::move(v));
  }
  return traffic;
}

}  // namespace uisim
