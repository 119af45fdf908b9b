#pragma once

// File formats.
//
// Signal file: CSV with header "time_s,<name><unit-suffix>", integer
// seconds, uniform cadence. Lines starting with '#' are comments.
//
// Trace directory:
//   trace.csv     one row per control cycle; columns listed in
//                 trace_columns(), then per-unit blocks s_<i>,t_air_c_<i>,
//                 soa_<i> when the run recorded them
//   switches.csv  time_s,unit,s for every on/off transition
//   summary.json  config echo, seed, initial states, baseline profile and
//                 the uncontrolled switching reference

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "aclm/engine.hpp"
#include "aclm/metrics.hpp"
#include "aclm/signals.hpp"

namespace aclm {

/// Throws ParseError (with line number) on malformed rows, ValidationError
/// on a missing or mismatched unit suffix, a non-uniform cadence, or
/// out-of-range regulation values.
SignalSeries load_signal(const std::filesystem::path& path, Unit expected);
void write_signal(const SignalSeries& s, const std::filesystem::path& path);

/// Unknown keys anywhere in the document are rejected. Relative signal
/// paths are resolved against `base_dir`.
ScenarioConfig scenario_from_json(const nlohmann::json& j,
                                  const std::filesystem::path& base_dir = {});
nlohmann::json scenario_to_json(const ScenarioConfig& cfg);
ScenarioConfig load_scenario(const std::filesystem::path& path);

const std::vector<std::string>& trace_columns();

void write_trace(const SimTrace& trace, const std::filesystem::path& dir);
SimTrace read_trace(const std::filesystem::path& dir);

nlohmann::json report_to_json(const MetricsReport& r);
void write_report(const MetricsReport& r, const std::filesystem::path& path);

/// Shortest text that parses back to the same double.
std::string format_double(double v);

}  // namespace aclm
