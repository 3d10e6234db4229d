#pragma once

#include <ostream>

namespace ringnet {

// Subcommands: run, export-graph, demo. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ringnet
