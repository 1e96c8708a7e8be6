#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lsnsum {

// Exit codes shared by every command.
enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 2,
  kExitNumeric = 3,
  kExitIo = 4,
};

// Optional command-line overrides applied on top of the scenario file.
struct CommandOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<std::vector<double>> levels;
  int threads = 1;
  std::string out_path;  // empty: stdout for fit, required for csv commands
  bool with_mc = false;  // outage: add the simulated column
};

// Fit record as JSON (stdout and optionally --out).
int cmd_fit(const std::string& scenario_path, const CommandOptions& opt,
            std::ostream& console, std::ostream& errors);

// CSV of MC/LSN/FW cdfs on a quantile grid + JSON deviation report.
int cmd_compare(const std::string& scenario_path, const CommandOptions& opt,
                std::ostream& console, std::ostream& errors);

// CSV dump of the simulated ecdf of the sum, dB domain.
int cmd_simulate(const std::string& scenario_path, const CommandOptions& opt,
                 std::ostream& console, std::ostream& errors);

// CSV outage curve(s) per placement.
int cmd_outage(const std::string& network_path, const CommandOptions& opt,
               std::ostream& console, std::ostream& errors);

}  // namespace lsnsum
