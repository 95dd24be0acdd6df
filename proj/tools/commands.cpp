#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <fmt/format.h>

#include "uisim/engine.hpp"
#include "uisim/render.hpp"
#include "uisim/trace.hpp"

namespace uisim::cli {

namespace fs = std::filesystem;

namespace {

SimParams load_params(const std::string& path) {
  SimParams base = resolve_defaults();
  return path.empty() ? base : load_params_file(path, base);
}

/// Maps library exceptions onto exit codes.
template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    fmt::print(stderr, "invalid scenario: {}\n", e.what());
    return kValidation;
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "invalid input: {}\n", e.what());
    return kValidation;
  } catch (const std::exception& e) {
    fmt::print(stderr, "internal error: {}\n", e.what());
    return kInternal;
  }
}

Execution policy(bool parallel) { return parallel ? Execution::Parallel : Execution::Serial; }

}  // namespace

int cmd_run(const RunArgs& args) {
  return guarded([&] {
    const SimParams params = load_params(args.params);
    const ScenarioSpec scenario = load_scenario(args.scenario);
    validate_scenario(scenario, params);
    const RunRecord record = run(scenario, args.seed, params, {policy(args.parallel), true});
    fs::create_directories(args.out);
    write_trace((fs::path(args.out) / "trace.jsonl").string(), record.trace);
    write_json((fs::path(args.out) / "summary.json").string(), run_summary(record, args.seed));
    fmt::print("{} after {} steps\n", to_string(record.outcome), record.steps);
    return kOk;
  });
}

int cmd_batch(const BatchArgs& args) {
  return guarded([&] {
    const SimParams params = load_params(args.params);
    BatchConfig config;
    config.arms = args.arms;
    config.vehicles = args.vehicles;
    config.runs = args.runs;
    config.seed = args.seed;
    config.policy = policy(args.parallel);
    for (int n : config.arms) {
      if (n < 3 || n > 5) throw std::invalid_argument(fmt::format("arm count {} is not in 3..5", n));
    }
    for (int n : config.vehicles) {
      if (n < 1) throw std::invalid_argument(fmt::format("vehicle count {} must be positive", n));
    }
    if (config.runs < 1) throw std::invalid_argument("--runs must be at least 1");
    fs::create_directories(fs::path(args.out) / "runs");
    config.on_run = [&](const BatchRun& r) {
      const auto dir = fs::path(args.out) / "runs" / fmt::format("N{}_n{}", r.arms, r.vehicles);
      fs::create_directories(dir);
      auto summary = run_summary(r.record, r.seed);
      summary["scenario"] = scenario_to_json(r.scenario);
      write_json((dir / fmt::format("{}.summary.json", r.index)).string(), summary);
    };
    const auto cells = run_batch(params, config);
    std::ofstream csv(fs::path(args.out) / "metrics.csv");
    csv << metrics_csv(cells);
    for (const auto& c : cells) {
      if (c.generation_failures > 0) {
        fmt::print(stderr, "warning: N={} n={}: {} sampled scenarios violated the lane spacing and were redrawn\n",
                   c.arms, c.vehicles, c.generation_failures);
      }
      if (c.runs < config.runs) {
        fmt::print(stderr, "warning: N={} n={}: {} of {} runs excluded after repeated generation failures\n",
                   c.arms, c.vehicles, config.runs - c.runs, config.runs);
      }
      fmt::print("N={} n={} SR={:.2f} CR={:.2f} DR={:.2f} mean CT={:.2f}s\n", c.arms, c.vehicles, c.sr(), c.cr(),
                 c.dr(), c.mean_ct);
    }
    return kOk;
  });
}

int cmd_render(const RenderArgs& args) {
  return guarded([&] {
    const SimParams params = load_params(args.params);
    const ScenarioSpec scenario = load_scenario(args.scenario);
    const auto trace = read_trace(args.trace);
    const auto names = render_frames(scenario, trace, args.every, args.out, params);
    fmt::print("wrote {} frame(s) to {}\n", names.size(), args.out);
    return kOk;
  });
}

}  // namespace uisim::cli
