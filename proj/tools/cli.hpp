#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gifode::cli {

// Exit codes: 0 done (for solve: found and verified), 1 verification failed,
// 2 nothing found within the bounds, 3 bad input, 4 a search limit was hit.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gifode::cli
