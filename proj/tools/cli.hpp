#pragma once

#include <ostream>

namespace atlas::cli {

// Exit codes: 0 success, 1 usage or runtime error, 2 the data contradicts a
// certificate (conflicting verdict or a failed audit).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace atlas::cli
