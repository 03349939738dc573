#pragma once

#include <ostream>

namespace treecodex::cli {

// Exit status: 0 success, 1 domain error or failed check, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace treecodex::cli
