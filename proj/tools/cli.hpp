#pragma once

#include <iosfwd>

namespace qhb::cli {

// Exit codes: 0 success, 2 validation failed at some stage, 1 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qhb::cli
