#pragma once

#include <iosfwd>

namespace vsg {

// Exit codes: 0 success, 1 invalid input, 2 budget exceeded,
// 3 search exhausted (inconclusive).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vsg
