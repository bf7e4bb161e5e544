#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace robin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one invocation; `args` excludes the program name.
///
/// Subcommands: coeff, model, spectrum, sweep. `--config FILE` reads
/// `key = value` lines naming the subcommand's long options; flags given on
/// the command line win. Output goes to `--output` or `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace robin::cli
