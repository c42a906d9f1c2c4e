#pragma once

#include <iosfwd>

namespace tracegraph::cli {

// Entry point of the `tracegraph` command; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tracegraph::cli
