#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iepg/json_fwd.hpp"

namespace iepg::cli {

enum class Command { realize, ssp, compat, search01, join2, partialjoin, cycles, scenario, verify };

Command parse_command(const std::string& name);
std::string command_name(Command c);
const std::vector<std::string>& command_names();

enum Exit : int { ok = 0, negative = 1, numeric = 2, input = 3 };

struct RunConfig {
  std::uint64_t seed = 0;
  // Unset tolerances fall back to the library's scale-relative defaults.
  std::optional<double> zero_tol;
  std::optional<double> gap_tol;
  std::optional<double> spectral_tol;  // relative to the target spread
  std::string scenario;
  int verbosity = 0;
};

struct RunResult {
  int exit_code = Exit::ok;
  Json artifact;
  std::optional<std::string> csv;  // decay tables
};

/// Dispatches one command. Never throws: library errors become exit codes
/// with an {"error": ...} artifact.
RunResult run(Command command, const RunConfig& config, const Json& input);

}  // namespace iepg::cli
