#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hilbcone::cli {

// Exit codes: 0 success, 1 check failures, 2 usage or data errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hilbcone::cli
