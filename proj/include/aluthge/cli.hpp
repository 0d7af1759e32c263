#pragma once

// Command-line front end. Subcommands: symbols, iterate, norms, sot, hardy,
// verify. Exit status 0 when every hard check passes, 1 on any failure, 2 on
// a usage error.

#include <ostream>

namespace aluthge {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aluthge
