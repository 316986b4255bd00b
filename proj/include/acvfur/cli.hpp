#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace acvfur {

/// Entry point behind the `acvfur` executable. `args` includes the program
/// name. Returns 0 on success (whatever the test decides), 1 on runtime
/// errors and 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace acvfur
