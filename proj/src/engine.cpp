#include "uisim/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "uisim/levelk.hpp"

namespace uisim {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Success: return "success";
    case Outcome::Collision: return "collision";
    case Outcome::Deadlock: return "deadlock";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void fill_snapshots(const Traffic& traffic, StepRecord& record) {
  record.t = traffic.t;
  record.vehicles.clear();
  for (const Vehicle& v : traffic.vehicles) {
    if (!v.active) continue;
    VehicleSnapshot s;
    s.id = v.id;
    s.rho = v.state.rho;
    s.v = v.state.v;
    s.x = v.state.x;
    s.y = v.state.y;
    s.theta = v.state.theta;
    s.beliefs = v.beliefs;
    record.vehicles.push_back(std::move(s));
  }
}

bool needs_levelk(const Traffic& traffic) {
  return std::any_of(traffic.vehicles.begin(), traffic.vehicles.end(), [](const Vehicle& v) {
    return v.active && v.model.kind != ModelKind::LeaderFollower;
  });
}

}  // namespace

std::vector<std::pair<int, int>> colliding_pairs(const Traffic& traffic, const SimParams& params) {
  std::vector<std::pair<int, int>> out;
  const auto& vs = traffic.vehicles;
  for (size_t i = 0; i < vs.size(); ++i) {
    if (!vs[i].active) continue;
    const auto ri = zone_rect(vs[i].state, params.reward.c_zone);
    for (size_t j = i + 1; j < vs.size(); ++j) {
      if (!vs[j].active) continue;
      if (overlap_area(ri, zone_rect(vs[j].state, params.reward.c_zone)) > 0.0) {
        out.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return out;
}

bool step(Traffic& traffic, const SimParams& params, Rng& rng, const EngineOptions& options, StepRecord& record,
          StepRecord& next, std::vector<double>& decision_seconds, bool& collided) {
  const auto context_start = Clock::now();
  const StepContext ctx(traffic, params);
  const double context_seconds = seconds_since(context_start);
  const auto& space = ctx.space();
  const int n = static_cast<int>(traffic.vehicles.size());
  const int active = static_cast<int>(traffic.active_ids().size());

  std::optional<LevelKTable> table;
  double table_seconds = 0.0;
  if (needs_levelk(traffic)) {
    const auto start = Clock::now();
    table = compute_levelk_table(ctx, params.level_k.k_max, options.policy);
    table_seconds = seconds_since(start);
  }
  int levelk_users = 0;
  for (const Vehicle& v : traffic.vehicles) levelk_users += v.active && v.model.kind != ModelKind::LeaderFollower;

  std::vector<double> accel(static_cast<size_t>(n), 0.0);
  std::vector<double> timing(static_cast<size_t>(n), -1.0);
  for_each_index(options.policy, n, [&](int i) {
    const Vehicle& v = traffic.vehicles[i];
    if (!v.active) return;
    const auto start = Clock::now();
    ActionIndex g = 0;
    switch (v.model.kind) {
      case ModelKind::LeaderFollower: g = decide_lf(ctx, i); break;
      case ModelKind::LevelK: g = levelk_decision(*table, i, v.model.level); break;
      case ModelKind::AdaptiveLevelK:
        g = adaptive_decision(ctx, *table, i, v.beliefs, params.level_k.combination_cap);
        break;
    }
    accel[i] = space.first(g);
    timing[i] = seconds_since(start);
    // Shared per-step work is charged evenly: the context (predicted
    // trajectories, perception, courteous sets) to every active vehicle, the
    // level table to the vehicles that use it.
    timing[i] += context_seconds / active;
    if (v.model.kind != ModelKind::LeaderFollower) timing[i] += table_seconds / levelk_users;
  });
  for (double s : timing) {
    if (s >= 0.0) decision_seconds.push_back(s);
  }

  const auto deadlock = break_deadlocks(ctx, accel, rng);
  if (options.record_trace) {
    for (auto& snap : record.vehicles) {
      snap.a = accel[snap.id];
      for (int j : ctx.neighbors(snap.id)) {
        snap.leads.emplace_back(j, assign_role(traffic, snap.id, j, params.decision.delta) == RoleRelation::Leads);
      }
    }
    if (deadlock.triggered) {
      record.events.push_back({"deadlock", deadlock.conflict, 0.0});
      if (!deadlock.probed.empty()) record.events.push_back({"probe", deadlock.probed, 0.0});
    }
  }

  for (Vehicle& v : traffic.vehicles) {
    if (v.active) v.state = advance(v.state, accel[v.id], params.limits);
  }
  if (table) {
    for (Vehicle& v : traffic.vehicles) {
      if (!v.active || v.model.kind != ModelKind::AdaptiveLevelK) continue;
      for (int j : ctx.neighbors(v.id)) {
        std::vector<double> predicted;
        for (int k = 0; k <= table->k_max(); ++k) predicted.push_back(space.first(table->at(k, j)));
        v.beliefs[j] = update_belief(v.beliefs[j], predicted, accel[j], params.level_k.belief_step);
      }
    }
  }
  traffic.t += 1;

  next = StepRecord{};
  const auto hits = colliding_pairs(traffic, params);
  collided = !hits.empty();
  if (!collided) {
    for (Vehicle& v : traffic.vehicles) {
      if (v.active && v.state.rho >= v.path->rho_terminal()) {
        v.active = false;
        v.completion_time = traffic.t * params.limits.dt;
        next.events.push_back({"completion", {v.id}, *v.completion_time});
      }
    }
  }
  if (options.record_trace) {
    fill_snapshots(traffic, next);
    for (const auto& [i, j] : hits) next.events.push_back({"collision", {i, j}, 0.0});
  }
  next.t = traffic.t;
  const bool all_done = std::none_of(traffic.vehicles.begin(), traffic.vehicles.end(),
                                     [](const Vehicle& v) { return v.active; });
  return collided || all_done || traffic.t >= params.time_limit_steps;
}

RunRecord run(const ScenarioSpec& scenario, std::uint64_t seed, const SimParams& params,
              const EngineOptions& options) {
  Traffic traffic = build_world(scenario, params);
  Rng rng(seed);
  RunRecord out;
  StepRecord current;
  fill_snapshots(traffic, current);
  for (const Vehicle& v : traffic.vehicles) {
    const auto& arc = v.path->arc();
    if (arc && arc->radius < params.reward.c_zone.width) current.events.push_back({"tight_radius", {v.id}, arc->radius});
  }

  bool collided = false;
  bool over = traffic.active_ids().empty() || params.time_limit_steps == 0;
  while (!over) {
    StepRecord next;
    over = step(traffic, params, rng, options, current, next, out.decision_seconds, collided);
    if (options.record_trace) out.trace.push_back(std::move(current));
    current = std::move(next);
  }
  if (options.record_trace) out.trace.push_back(std::move(current));

  out.steps = traffic.t;
  for (const Vehicle& v : traffic.vehicles) out.completion_times.push_back(v.completion_time);
  if (collided) {
    out.outcome = Outcome::Collision;
  } else if (traffic.active_ids().empty()) {
    out.outcome = Outcome::Success;
  } else {
    out.outcome = Outcome::Deadlock;
  }
  return out;
}

std::vector<CellMetrics> run_batch(const SimParams& params, const BatchConfig& config) {
  if (config.runs < 1) throw std::invalid_argument("runs must be at least 1");
  std::vector<CellMetrics> cells;
  for (int arms : config.arms) {
    for (int count : config.vehicles) {
      struct Slot {
        std::optional<BatchRun> run;
        std::vector<std::string> failures;
      };
      std::vector<Slot> slots(static_cast<size_t>(config.runs));
      for_each_index(config.policy, config.runs, [&](int k) {
        for (int attempt = 0; attempt < config.generation_attempts; ++attempt) {
          const auto seed = derive_seed(config.seed, arms, count, k, attempt);
          Rng rng(seed);
          ScenarioSpec scenario;
          try {
            scenario = sample_scenario(arms, count, rng, params);
          } catch (const GenerationError& e) {
            slots[k].failures.push_back(e.what());
            continue;
          }
          BatchRun r{arms, count, k, splitmix64(seed), std::move(scenario), {}};
          r.record = run(r.scenario, r.seed, params, {Execution::Serial, false});
          slots[k].run = std::move(r);
          return;
        }
      });

      CellMetrics m;
      m.arms = arms;
      m.vehicles = count;
      std::vector<double> cts;
      double decision_sum = 0.0;
      size_t decision_count = 0;
      for (int k = 0; k < config.runs; ++k) {
        auto& slot = slots[k];
        m.generation_failures += static_cast<int>(slot.failures.size());
        if (config.on_generation_failure) {
          for (const auto& why : slot.failures) config.on_generation_failure(arms, count, k, why);
        }
        if (!slot.run) continue;
        const RunRecord& r = slot.run->record;
        ++m.runs;
        switch (r.outcome) {
          case Outcome::Success:
            ++m.successes;
            for (const auto& ct : r.completion_times) cts.push_back(*ct);
            break;
          case Outcome::Collision: ++m.collisions; break;
          case Outcome::Deadlock: ++m.deadlocks; break;
        }
        for (double s : r.decision_seconds) {
          decision_sum += s;
          m.max_decision_s = std::max(m.max_decision_s, s);
        }
        decision_count += r.decision_seconds.size();
        if (config.on_run) config.on_run(*slot.run);
      }
      if (!cts.empty()) {
        double sum = 0.0;
        for (double c : cts) sum += c;
        m.mean_ct = sum / static_cast<double>(cts.size());
        double sq = 0.0;
        for (double c : cts) sq += (c - m.mean_ct) * (c - m.mean_ct);
        m.std_ct = cts.size() > 1 ? std::sqrt(sq / static_cast<double>(cts.size() - 1)) : 0.0;
      }
      if (decision_count > 0) m.mean_decision_s = decision_sum / static_cast<double>(decision_count);
      cells.push_back(m);
    }
  }
  return cells;
}

}  // namespace uisim
