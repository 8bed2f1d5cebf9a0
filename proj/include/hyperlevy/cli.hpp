#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperlevy {

// levy_hg command line; args excludes the program name. Returns the exit
// code: 0 ok, 1 numerical failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hyperlevy
