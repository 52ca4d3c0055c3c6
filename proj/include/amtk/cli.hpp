#pragma once

// amtk command-line front end. run() executes one subcommand and returns the
// process exit code: 0 success, 1 usage error, 2 domain/numeric error.
// Output is deterministic: identical argv produces byte-identical output.

#include <iosfwd>
#include <string>
#include <vector>

namespace amtk::cli {

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace amtk::cli
