#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tempered {

/// Command-line entry point. Returns 0 on success, 1 on a contract error
/// (reported as JSON on err) and 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tempered
