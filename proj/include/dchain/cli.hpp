#pragma once

#include <string>
#include <vector>

namespace dchain {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumeric = 2;
inline constexpr int kExitIo = 3;

// Entry point of the `dchain` tool. argv[0] is the program name.
int run_cli(int argc, const char* const* argv);

// Reads `--config FILE` (or `--config=FILE`) out of args and splices the
// file's `key = value` lines in as `--key=value` right after the subcommand
// name, so that flags given on the command line, coming later, win.
// Throws IoError if the file cannot be read.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

}  // namespace dchain
