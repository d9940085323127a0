#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ddesim/cli/config.hpp"
#include "ddesim/cli/output.hpp"

namespace ddesim::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitNumerical = 2,
  kExitValidation = 3,
};

struct CommandResult {
  CsvTable table;
  nlohmann::json meta = nlohmann::json::object();
  int exit_code = kExitOk;
};

/// Each command computes its table without touching the filesystem.
CommandResult cmd_populations(const RunConfig& cfg);
CommandResult cmd_steady(const RunConfig& cfg);
CommandResult cmd_concurrence_map(const RunConfig& cfg);
CommandResult cmd_g2(const RunConfig& cfg);
CommandResult cmd_timescale_map(const RunConfig& cfg);
/// exit_code is kExitValidation when any check fails.
CommandResult cmd_validate(const RunConfig& cfg);

const std::vector<std::string>& command_names();

/// Dispatches by name, writes CSV + sidecar, and maps library errors to
/// exit codes. Error text goes to `err`.
int run_command(const std::string& name, const RunConfig& cfg, std::ostream& err);

}  // namespace ddesim::cli
