#pragma once

#include <iosfwd>

namespace nucleus::cli {

// Entry point shared by the executable and the CLI tests. Returns the exit
// status; normal output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nucleus::cli
