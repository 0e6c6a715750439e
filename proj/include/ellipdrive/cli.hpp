#pragma once

#include <ostream>

namespace ellipdrive {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitDomain = 2,
  kExitUsage = 64,
  kExitIntegration = 70,
  kExitIo = 74,
};

/**
 * Entry point of the `ellipdrive` tool: subcommands params, simulate,
 * phase, verify and density. Data goes to --out (default stdout);
 * reports go to stdout, or to `err` when stdout carries data.
 */
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ellipdrive
