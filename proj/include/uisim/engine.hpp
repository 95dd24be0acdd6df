#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uisim/execution.hpp"
#include "uisim/interaction.hpp"
#include "uisim/scenario.hpp"

namespace uisim {

enum class Outcome { Success, Collision, Deadlock };
const char* to_string(Outcome o);

struct Event {
  std::string type;  // probe, deadlock, collision, completion, tight_radius
  std::vector<int> vehicles;
  double value = 0.0;  // completion time, or arc radius for tight_radius
};

struct VehicleSnapshot {
  int id = 0;
  double rho = 0.0;
  double v = 0.0;
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  std::optional<double> a;  // acceleration applied from this step; absent on the final record
  std::vector<std::pair<int, bool>> leads;  // (neighbor, whether this vehicle leads it)
  std::vector<std::vector<double>> beliefs;  // adaptive vehicles: per vehicle id
};

/// State at step t, the decisions taken at t, and the events of step t.
struct StepRecord {
  int t = 0;
  std::vector<VehicleSnapshot> vehicles;
  std::vector<Event> events;
};

struct RunRecord {
  Outcome outcome = Outcome::Success;
  int steps = 0;
  std::vector<std::optional<double>> completion_times;
  std::vector<StepRecord> trace;
  /// Wall-clock seconds of each vehicle decision, including an even share of
  /// the per-step work common to all decisions.
  std::vector<double> decision_seconds;
};

struct EngineOptions {
  Execution policy = Execution::Serial;
  bool record_trace = true;
};

/// Vehicles whose c-zones currently overlap, as (i, j) with i < j.
std::vector<std::pair<int, int>> colliding_pairs(const Traffic& traffic, const SimParams& params);

/// Advances the traffic by one step. Returns true when the run is over.
/// `record` receives the decisions for the current step; `next` the
/// resulting state and its events.
bool step(Traffic& traffic, const SimParams& params, Rng& rng, const EngineOptions& options,
          StepRecord& record, StepRecord& next, std::vector<double>& decision_seconds, bool& collided);

RunRecord run(const ScenarioSpec& scenario, std::uint64_t seed, const SimParams& params,
              const EngineOptions& options = {});

struct CellMetrics {
  int arms = 0;
  int vehicles = 0;
  int runs = 0;
  int successes = 0;
  int collisions = 0;
  int deadlocks = 0;
  int generation_failures = 0;
  double mean_ct = 0.0;
  double std_ct = 0.0;
  double mean_decision_s = 0.0;
  double max_decision_s = 0.0;

  double sr() const { return runs ? static_cast<double>(successes) / runs : 0.0; }
  double cr() const { return runs ? static_cast<double>(collisions) / runs : 0.0; }
  double dr() const { return runs ? static_cast<double>(deadlocks) / runs : 0.0; }
};

struct BatchRun {
  int arms = 0;
  int vehicles = 0;
  int index = 0;
  std::uint64_t seed = 0;  // passed to run(); replaying the scenario with it reproduces the record
  ScenarioSpec scenario;
  RunRecord record;
};

struct BatchConfig {
  std::vector<int> arms{3, 4, 5};
  std::vector<int> vehicles{2, 4, 6, 8, 10};
  int runs = 100;
  std::uint64_t seed = 0;
  /// Fresh scenario draws per run before the run counts as a generation failure.
  int generation_attempts = 2000;
  /// Runs are distributed over threads; each run's decisions stay serial.
  Execution policy = Execution::Serial;
  /// Called once per finished run, in (cell, run) order.
  std::function<void(const BatchRun&)> on_run;
  /// Called for every discarded scenario draw.
  std::function<void(int arms, int vehicles, int run, const std::string& why)> on_generation_failure;
};

std::vector<CellMetrics> run_batch(const SimParams& params, const BatchConfig& config);

}  // namespace uisim
