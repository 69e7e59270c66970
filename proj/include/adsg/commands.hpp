#pragma once

// Command pipelines behind the CLI and the C API. Each command takes a JSON
// config and returns a self-contained JSON report plus named text artifacts
// (CSV, SVG).

#include <string>
#include <utility>
#include <vector>

#include "adsg/json_io.hpp"

namespace adsg {

const char* library_version() noexcept;

struct CommandResult {
  Json report;
  std::vector<std::pair<std::string, std::string>> artifacts;  // file name -> content
};

/// Names accepted by run_command, in a fixed order.
const std::vector<std::string>& command_names();

/// Throws InputError for unknown commands and malformed configs, and
/// adsg::Error for domain failures.
CommandResult run_command(const std::string& name, const Json& config);

/// Report for a failure: version, command, config and an error object.
Json error_report(const std::string& name, const Json& config, const std::string& code,
                  int value, const std::string& message);

}  // namespace adsg
