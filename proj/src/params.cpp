#include "uisim/params.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include <fmt/format.h>

namespace uisim {

using nlohmann::json;

namespace {

json zone_to_json(const ZoneDims& z) { return json::array({z.forward, z.rear, z.width}); }

ZoneDims zone_from_json(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 3) {
    throw std::invalid_argument(fmt::format("{} must be [forward, rear, width]", key));
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "version", "v_min", "v_max", "dt", "accelerations", "delta", "weights", "w_hat", "c_zone",
      "s_zone_leader", "s_zone_follower", "s_zone_level_k", "horizon", "discount",
      "perception_range", "probe_probability", "k_max", "belief_step", "combination_cap",
      "d_term", "time_limit_steps", "rho_sep", "max_resample_attempts",
      "lane_count_probabilities", "angle_std", "angle_bound", "d_entrance_range", "v0_range"};
  return keys;
}

}  // namespace

void RandomizationConfig::validate() const {
  double sum = 0.0;
  for (double p : lane_count_probabilities) {
    if (p < 0.0) throw std::invalid_argument("lane-count probabilities must be non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("lane-count probabilities must sum to 1");
  if (!(angle_std > 0.0 && angle_bound > 0.0)) throw std::invalid_argument("angle distribution is degenerate");
  if (!(d_entrance_min > 0.0 && d_entrance_min < d_entrance_max)) {
    throw std::invalid_argument("entrance distance range is degenerate");
  }
  if (!(v0_min >= 0.0 && v0_min < v0_max)) throw std::invalid_argument("initial speed range is degenerate");
  if (separation < 0.0) throw std::invalid_argument("separation must be non-negative");
  if (max_attempts < 1) throw std::invalid_argument("max_attempts must be at least 1");
}

void SimParams::validate() const {
  limits.validate();
  reward.validate();
  randomization.validate();
  if (decision.delta < 0.0) throw std::invalid_argument("delta must be non-negative");
  if (!(decision.perception_range > 0.0)) throw std::invalid_argument("perception range must be positive");
  if (decision.probe_probability < 0.0 || decision.probe_probability > 1.0) {
    throw std::invalid_argument("probe probability must lie in [0,1]");
  }
  if (level_k.k_max < 0) throw std::invalid_argument("k_max must be non-negative");
  if (!(level_k.belief_step > 0.0)) throw std::invalid_argument("belief step must be positive");
  if (level_k.combination_cap < 0) throw std::invalid_argument("combination cap must be non-negative");
  if (!(d_term > 0.0)) throw std::invalid_argument("d_term must be positive");
  if (time_limit_steps < 0) throw std::invalid_argument("time limit must be non-negative");
}

SimParams default_params() { return SimParams{}; }

json params_to_json(const SimParams& p) {
  json j;
  j["version"] = SimParams::kVersion;
  j["v_min"] = p.limits.v_min;
  j["v_max"] = p.limits.v_max;
  j["dt"] = p.limits.dt;
  j["accelerations"] = p.limits.accelerations;
  j["delta"] = p.decision.delta;
  j["weights"] = {p.reward.w_collision, p.reward.w_separation, p.reward.w_speed};
  j["w_hat"] = p.reward.w_hat;
  j["c_zone"] = {p.reward.c_zone.forward + p.reward.c_zone.rear, p.reward.c_zone.width};
  j["s_zone_leader"] = zone_to_json(p.reward.s_zone_leader);
  j["s_zone_follower"] = zone_to_json(p.reward.s_zone_follower);
  j["s_zone_level_k"] = zone_to_json(p.reward.s_zone_level_k);
  j["horizon"] = p.reward.horizon;
  j["discount"] = p.reward.discount;
  j["perception_range"] = p.decision.perception_range;
  j["probe_probability"] = p.decision.probe_probability;
  j["k_max"] = p.level_k.k_max;
  j["belief_step"] = p.level_k.belief_step;
  j["combination_cap"] = p.level_k.combination_cap;
  j["d_term"] = p.d_term;
  j["time_limit_steps"] = p.time_limit_steps;
  j["rho_sep"] = p.randomization.separation;
  j["max_resample_attempts"] = p.randomization.max_attempts;
  j["lane_count_probabilities"] = p.randomization.lane_count_probabilities;
  j["angle_std"] = p.randomization.angle_std;
  j["angle_bound"] = p.randomization.angle_bound;
  j["d_entrance_range"] = {p.randomization.d_entrance_min, p.randomization.d_entrance_max};
  j["v0_range"] = {p.randomization.v0_min, p.randomization.v0_max};
  return j;
}

SimParams params_from_json(const json& j, SimParams p) {
  if (!j.is_object()) throw std::invalid_argument("parameter file must hold a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!known_keys().contains(key)) throw std::invalid_argument(fmt::format("unknown parameter '{}'", key));
  }
  if (j.contains("version") && j["version"].get<int>() != SimParams::kVersion) {
    throw std::invalid_argument(fmt::format("unsupported parameter file version {}", j["version"].dump()));
  }
  auto get = [&](const char* key, auto& out) {
    if (j.contains(key)) out = j[key].get<std::decay_t<decltype(out)>>();
  };
  get("v_min", p.limits.v_min);
  get("v_max", p.limits.v_max);
  get("dt", p.limits.dt);
  get("accelerations", p.limits.accelerations);
  get("delta", p.decision.delta);
  if (j.contains("weights")) {
    const auto w = j["weights"].get<std::vector<double>>();
    if (w.size() != 3) throw std::invalid_argument("weights must hold three values");
    p.reward.w_collision = w[0];
    p.reward.w_separation = w[1];
    p.reward.w_speed = w[2];
  }
  get("w_hat", p.reward.w_hat);
  if (j.contains("c_zone")) {
    const auto c = j["c_zone"].get<std::vector<double>>();
    if (c.size() != 2) throw std::invalid_argument("c_zone must be [length, width]");
    p.reward.c_zone = ZoneDims::centered(c[0], c[1]);
  }
  if (j.contains("s_zone_leader")) p.reward.s_zone_leader = zone_from_json(j["s_zone_leader"], "s_zone_leader");
  if (j.contains("s_zone_follower")) p.reward.s_zone_follower = zone_from_json(j["s_zone_follower"], "s_zone_follower");
  if (j.contains("s_zone_level_k")) p.reward.s_zone_level_k = zone_from_json(j["s_zone_level_k"], "s_zone_level_k");
  get("horizon", p.reward.horizon);
  get("discount", p.reward.discount);
  get("perception_range", p.decision.perception_range);
  get("probe_probability", p.decision.probe_probability);
  get("k_max", p.level_k.k_max);
  get("belief_step", p.level_k.belief_step);
  get("combination_cap", p.level_k.combination_cap);
  get("d_term", p.d_term);
  get("time_limit_steps", p.time_limit_steps);
  get("rho_sep", p.randomization.separation);
  get("max_resample_attempts", p.randomization.max_attempts);
  get("lane_count_probabilities", p.randomization.lane_count_probabilities);
  get("angle_std", p.randomization.angle_std);
  get("angle_bound", p.randomization.angle_bound);
  if (j.contains("d_entrance_range")) {
    const auto r = j["d_entrance_range"].get<std::array<double, 2>>();
    p.randomization.d_entrance_min = r[0];
    p.randomization.d_entrance_max = r[1];
  }
  if (j.contains("v0_range")) {
    const auto r = j["v0_range"].get<std::array<double, 2>>();
    p.randomization.v0_min = r[0];
    p.randomization.v0_max = r[1];
  }
  p.validate();
  return p;
}

SimParams load_params_file(const std::string& path, SimParams base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(fmt::format("cannot open parameter file '{}'", path));
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(fmt::format("parameter file '{}': {}", path, e.what()));
  }
  return params_from_json(j, std::move(base));
}

SimParams resolve_defaults() {
  if (const char* env = std::getenv("UISIM_DEFAULTS"); env != nullptr && *env != '\0') {
    return load_params_file(env);
  }
  return default_params();
}

}  // namespace uisim
