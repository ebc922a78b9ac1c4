#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace recmon {

/* Command-line entry point.  Returns the process exit status: 0 success,
   1 usage or parse error, 2 analysis error, 3 resource cap exceeded. */
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace recmon
