#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quadcode {

/// Exit codes of the command-line front end.
enum ExitCode { exit_ok = 0, exit_check_failed = 1, exit_usage = 2 };

/// Runs one subcommand. args excludes the program name; `in` feeds
/// `classify --input -`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace quadcode
