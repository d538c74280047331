#pragma once

#include <string>
#include <vector>

namespace artfima {

// Full CLI dispatch; linked into both the binary and the tests.
// Exit codes: 0 success, 1 runtime/data failure, 2 usage error.
int run_cli(const std::vector<std::string>& args);

}  // namespace artfima
