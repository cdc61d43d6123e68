#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qrec::cli {

// Exit codes of the command-line front end.
enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_domain = 2,
    exit_cap = 3,
    exit_refusal = 4,
};

// Runs one command. args excludes the program name. Reports go to `out`,
// diagnostics (and timings with --verbose) to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace qrec::cli
