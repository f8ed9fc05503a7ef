#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace projlat::cli {

// One full invocation, arguments without the program name.  Returns the
// process exit code: 0 when the requested properties hold, 1 on a property
// violation (the report names the violated invariant and carries the
// instance), 2 on input or configuration errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace projlat::cli
