#pragma once

#include <iosfwd>

namespace hypdiff {

// Parses argv, runs the requested subcommand and writes the report to `out`,
// diagnostics to `err`. Exit codes: 0 success, 1 verification failure,
// 2 usage or parameter error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hypdiff
