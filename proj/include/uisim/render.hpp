#pragma once

#include <string>
#include <vector>

#include "uisim/engine.hpp"

namespace uisim {

/// SVG drawing of one step: road edges and lane markings, planned paths,
/// entrance and exit points, and each vehicle's c-zone.
std::string render_frame(const Traffic& world, const StepRecord& record, const SimParams& params);

/// Throws std::invalid_argument when the trace cannot belong to the scenario.
void check_trace_matches(const Traffic& world, const std::vector<StepRecord>& trace);

/// Writes frame_<t>.svg for every record with t % every == 0 (or the
/// initial state when the trace is empty). Returns the file names.
std::vector<std::string> render_frames(const ScenarioSpec& scenario, const std::vector<StepRecord>& trace,
                                       int every, const std::string& out_dir, const SimParams& params);

}  // namespace uisim
