#include "uisim/trace.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace uisim {

using nlohmann::ordered_json;

ordered_json step_record_to_json(const StepRecord& r) {
  ordered_json j;
  j["t"] = r.t;
  j["vehicles"] = ordered_json::array();
  for (const auto& v : r.vehicles) {
    ordered_json o;
    o["id"] = v.id;
    o["rho"] = v.rho;
    o["v"] = v.v;
    o["x"] = v.x;
    o["y"] = v.y;
    o["theta"] = v.theta;
    o["a"] = v.a ? ordered_json(*v.a) : ordered_json(nullptr);
    o["roles"] = ordered_json::array();
    for (const auto& [other, leads] : v.leads) {
      o["roles"].push_back({{"other", other}, {"role", leads ? "leader" : "follower"}});
    }
    if (!v.beliefs.empty()) o["beliefs"] = v.beliefs;
    j["vehicles"].push_back(std::move(o));
  }
  j["events"] = ordered_json::array();
  for (const auto& e : r.events) {
    ordered_json o;
    o["type"] = e.type;
    o["vehicles"] = e.vehicles;
    if (e.type == "completion") o["time"] = e.value;
    if (e.type == "tight_radius") o["radius"] = e.value;
    j["events"].push_back(std::move(o));
  }
  return j;
}

StepRecord step_record_from_json(const ordered_json& j) {
  StepRecord r;
  try {
    r.t = j.at("t").get<int>();
    for (const auto& o : j.at("vehicles")) {
      VehicleSnapshot v;
      v.id = o.at("id").get<int>();
      v.rho = o.at("rho").get<double>();
      v.v = o.at("v").get<double>();
      v.x = o.at("x").get<double>();
      v.y = o.at("y").get<double>();
      v.theta = o.at("theta").get<double>();
      if (!o.at("a").is_null()) v.a = o.at("a").get<double>();
      for (const auto& role : o.at("roles")) {
        v.leads.emplace_back(role.at("other").get<int>(), role.at("role").get<std::string>() == "leader");
      }
      if (o.contains("beliefs")) v.beliefs = o.at("beliefs").get<std::vector<std::vector<double>>>();
      r.vehicles.push_back(std::move(v));
    }
    for (const auto& o : j.at("events")) {
      Event e;
      e.type = o.at("type").get<std::string>();
      e.vehicles = o.at("vehicles").get<std::vector<int>>();
      if (o.contains("time")) e.value = o.at("time").get<double>();
      if (o.contains("radius")) e.value = o.at("radius").get<double>();
      r.events.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(fmt::format("malformed trace record: {}", e.what()));
  }
  return r;
}

void write_trace(const std::string& path, const std::vector<StepRecord>& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  for (const auto& r : trace) out << step_record_to_json(r).dump() << '\n';
}

std::vector<StepRecord> read_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(fmt::format("cannot open trace '{}'", path));
  std::vector<StepRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(step_record_from_json(ordered_json::parse(line)));
    } catch (const std::exception& e) {
      throw std::invalid_argument(fmt::format("{}:{}: {}", path, lineno, e.what()));
    }
  }
  return out;
}

ordered_json run_summary(const RunRecord& r, std::uint64_t seed) {
  ordered_json j;
  j["outcome"] = to_string(r.outcome);
  j["seed"] = seed;
  j["steps"] = r.steps;
  j["completion_times"] = ordered_json::array();
  for (const auto& ct : r.completion_times) {
    j["completion_times"].push_back(ct ? ordered_json(*ct) : ordered_json(nullptr));
  }
  double sum = 0.0;
  double worst = 0.0;
  for (double s : r.decision_seconds) {
    sum += s;
    worst = std::max(worst, s);
  }
  j["decisions"] = r.decision_seconds.size();
  j["mean_decision_s"] = r.decision_seconds.empty() ? 0.0 : sum / static_cast<double>(r.decision_seconds.size());
  j["max_decision_s"] = worst;
  return j;
}

void write_json(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  out << j.dump(2) << '\n';
}

std::string metrics_csv(const std::vector<CellMetrics>& cells) {
  std::string out = "N,n,SR,CR,DR,mean_CT,std_CT,mean_decision_s,max_decision_s\n";
  for (const auto& c : cells) {
    out += fmt::format("{},{},{},{},{},{:.6f},{:.6f},{:.9f},{:.9f}\n", c.arms, c.vehicles, c.sr(), c.cr(), c.dr(),
                       c.mean_ct, c.std_ct, c.mean_decision_s, c.max_decision_s);
  }
  return out;
}

}  // namespace uisim
