#ifndef HOMEOQM_CLI_CLI_H_
#define HOMEOQM_CLI_CLI_H_

#include <ostream>

namespace homeoqm::cli {

// Exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitViolation = 2;

// Parses `homeoqm <subcommand> <scene.json> [flags]`, runs it, writes JSON
// lines to `out` (and to --out when given) and diagnostics to `err`.
int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace homeoqm::cli

#endif  // HOMEOQM_CLI_CLI_H_
