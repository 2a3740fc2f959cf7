#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace foliage {

// Runs the foliage command line. `args` excludes the program name.
// Returns 0 on success, 1 on findings or failures, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace foliage
