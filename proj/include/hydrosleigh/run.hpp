#pragma once

#include <string>
#include <vector>

#include "hydrosleigh/config.hpp"
#include "hydrosleigh/integrate.hpp"

namespace hydrosleigh {

enum class Command { Simulate, ClosedForm, Compare, Report, MeasureCheck };

/// Throws ConfigError for unknown command names.
Command parse_command(const std::string& name);

std::string to_string(SleighRegime regime);

/// Execute one command. Time series go to CSV (17 significant digits, LF
/// endings), reports to JSON; files land in out_dir unless the config gives
/// explicit paths. Returns 0 on success; regime and config errors are thrown.
int run(const ScenarioConfig& config, Command command, const std::string& out_dir);

/// Run one simulation per value of the overridden parameter, concurrently,
/// writing sweep_<i>.csv / sweep_<i>.json. Returns 0 iff all runs succeed.
int run_sweep(const ScenarioConfig& base, const std::string& param,
              const std::vector<double>& values, const std::string& out_dir);

}  // namespace hydrosleigh
