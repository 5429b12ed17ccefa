#ifndef VERMILION_TOOLS_COMMANDS_H_
#define VERMILION_TOOLS_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace vermilion::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

// Runs one subcommand. `args` excludes the program name. Results go to
// `--out` when given (plus a manifest), otherwise to `out`; diagnostics go
// to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vermilion::cli

#endif  // VERMILION_TOOLS_COMMANDS_H_
