#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace glauber::cli {

/// Stable exit-code contract.
enum ExitCode : int {
  kOk = 0,
  kPropertyFailure = 1,
  kUsage = 2,
  kSolverFailure = 3,
  kPartialSweep = 4,
};

enum class Command { gap, sweep, verify, simulate };
enum class Format { csv, json };

/// Reads this variable when no --output is given for sweep/simulate.
inline constexpr const char* kOutputDirEnv = "GLAUBER_OUTPUT_DIR";

struct RunConfig {
  Command command = Command::gap;
  int n = 0;
  std::optional<double> J;
  std::optional<double> J_min;
  std::optional<double> J_max;
  std::optional<int> J_steps;
  double H = 0.0;
  bool temperature_view = false;
  double c = 1.0;
  std::uint64_t seed = 1;
  std::int64_t steps = 0;
  std::int64_t burn_in = 100;
  bool full = false;
  std::string output;
  Format format = Format::csv;
  std::string command_line;

  /// Throws std::invalid_argument describing the first violated rule.
  void validate() const;
};

/// Parses and runs one command; returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_gap(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace glauber::cli
