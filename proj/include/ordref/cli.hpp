#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ordref {

// Exit codes: 0 success or pass, 1 axiom or verification failure, 2 usage or validation error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ordref
