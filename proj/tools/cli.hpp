#pragma once

#include <iosfwd>

namespace fibspec::cli {

/// Parses argv, runs one subcommand and writes its output file.
/// Returns 0 on success, 2 on configuration errors, 3 on numerical failures.
int run(int argc, const char* const* argv, std::ostream& err);

} // namespace fibspec::cli
