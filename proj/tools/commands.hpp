#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ptgpe/config.hpp"

namespace ptgpe::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kNoConvergence = 2, kIoError = 3, kBlowUp = 4 };

struct Context {
  RunConfig config;
  int threads = 1;
  std::string build_id = "unknown";
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

struct Outcome {
  int exit_code = kOk;
  /// Printed as one `key=value ...` line on stdout.
  KeyValues summary;
  /// Paths relative to the output directory.
  std::vector<std::string> files;
  /// Extra manifest entries (partial failures, bifurcations).
  KeyValues notes;
};

Outcome cmd_solve(const Context& ctx);
Outcome cmd_spectrum(const Context& ctx);
Outcome cmd_stability(const Context& ctx);
Outcome cmd_evolve(const Context& ctx);
Outcome cmd_precession(const Context& ctx);

/// Runs `command`, maps library errors to exit codes, writes manifest.txt and prints the summary line.
int run(std::string_view command, const Context& ctx, std::ostream& out, std::ostream& err);

std::string summary_line(const KeyValues& kv);

}  // namespace ptgpe::cli
