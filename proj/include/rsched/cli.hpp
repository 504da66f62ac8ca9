#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rsched {

/// Entry point of the `rsched` tool. `args` excludes the program name.
/// Returns 0 on success, 1 when a verification or bound check fails and 2 on
/// input or usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rsched
