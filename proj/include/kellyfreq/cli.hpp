// cli.hpp
//
// Command-line front end. Kept callable in-process so the argument parsing
// and output formats are testable without spawning the binary.

#pragma once

#include <iosfwd>

namespace kellyfreq {

// Parses argv and runs one subcommand, writing results to `out` (or the
// file given by --output) and diagnostics to `err`. Returns 0 on success,
// 2 on usage errors, 1 on computation errors.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace kellyfreq
