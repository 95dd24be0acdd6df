#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace uisim::cli;
  CLI::App app{"Uncontrolled-intersection traffic simulator"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Simulate one scenario");
  run_cmd->add_option("--scenario", run.scenario, "Scenario JSON file")->required();
  run_cmd->add_option("--seed", run.seed, "Random seed")->required();
  run_cmd->add_option("--out", run.out, "Output directory")->required();
  run_cmd->add_option("--params", run.params, "Parameter overrides (JSON)");
  run_cmd->add_flag("--parallel", run.parallel, "Compute vehicle decisions in parallel");

  BatchArgs batch;
  auto* batch_cmd = app.add_subcommand("batch", "Simulate randomized scenarios over a grid");
  batch_cmd->add_option("--arms", batch.arms, "Arm counts")->delimiter(',');
  batch_cmd->add_option("--vehicles", batch.vehicles, "Vehicle counts")->delimiter(',');
  batch_cmd->add_option("--runs", batch.runs, "Runs per cell");
  batch_cmd->add_option("--seed", batch.seed, "Master seed")->required();
  batch_cmd->add_option("--out", batch.out, "Output directory")->required();
  batch_cmd->add_option("--params", batch.params, "Parameter overrides (JSON)");
  batch_cmd->add_flag("--parallel", batch.parallel, "Distribute runs over threads");

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "Draw trace steps as SVG frames");
  render_cmd->add_option("--trace", render.trace, "trace.jsonl from a run")->required();
  render_cmd->add_option("--scenario", render.scenario, "Scenario the trace was produced from")->required();
  render_cmd->add_option("--out", render.out, "Output directory")->required();
  render_cmd->add_option("--every", render.every, "Render every k-th step");
  render_cmd->add_option("--params", render.params, "Parameter overrides (JSON)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (run_cmd->parsed()) return cmd_run(run);
  if (batch_cmd->parsed()) return cmd_batch(batch);
  return cmd_render(render);
}
