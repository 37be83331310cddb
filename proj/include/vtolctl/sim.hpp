#pragma once

#include <iosfwd>
#include <string>

#include "vtolctl/log.hpp"
#include "vtolctl/report.hpp"

namespace vtolctl {

// Reference scenario shipped with the project: strong horizontal wind, all
// sensor noise and bias terms on, 60 s horizon.
ScenarioConfig baseline_config();

// Throws ParseError / ValidationError; missing file is an IoError. Every key
// is optional and defaults to the baseline value; unknown keys are errors.
ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config(std::istream& in, const std::string& name);

// Full scenario validation (also called by load_config and run).
void validate(const ScenarioConfig& config);

// Writes a config file containing every key (used by the `baseline`
// subcommand).
void save_config(const ScenarioConfig& config, const std::string& path);

// Dual-rate closed loop. Appends one record per controller tick plus a
// terminal row into `log`; on DivergenceError the partial log remains valid.
void run_into(const ScenarioConfig& config, RunLog& log);
RunLog run(const ScenarioConfig& config);

// CSV persistence: '#'-prefixed metadata preamble (full effective config),
// one header row, one data row per record, 17 significant digits.
void export_csv(const RunLog& log, const std::string& path);
RunLog import_csv(const std::string& path);

// Four SVG line plots (position error, velocity, commanded angular velocity,
// thrust force in newtons) written into `out_dir`.
void plot(const RunLog& log, const std::string& out_dir);

// Command-line entry point; returns the process exit code
// (0 success, 1 failed check, 2 usage/parse/input errors).
int run_cli(int argc, const char* const* argv);

} // namespace vtolctl
