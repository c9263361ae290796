#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nucleo::cli {

/// Runs the command-line tool. argv-style arguments without the program
/// name, e.g. {"compute", "--game", "g.json"}. Writes the report to `out`
/// and diagnostics to `err`.
///
/// Exit codes: 0 success, 1 validation error, 2 enumeration guard
/// exceeded, 3 internal contract violation.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace nucleo::cli
