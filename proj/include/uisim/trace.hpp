#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "uisim/engine.hpp"

namespace uisim {

nlohmann::ordered_json step_record_to_json(const StepRecord& r);
StepRecord step_record_from_json(const nlohmann::ordered_json& j);

/// One JSON object per line, one line per step.
void write_trace(const std::string& path, const std::vector<StepRecord>& trace);
std::vector<StepRecord> read_trace(const std::string& path);

nlohmann::ordered_json run_summary(const RunRecord& r, std::uint64_t seed);
void write_json(const std::string& path, const nlohmann::ordered_json& j);

/// Header plus one row per cell.
std::string metrics_csv(const std::vector<CellMetrics>& cells);

}  // namespace uisim
