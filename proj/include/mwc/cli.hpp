#pragma once

#include <iosfwd>

namespace mwc {

/// Entry point of the `mwc` tool. Returns 0 on success, 1 on usage or input
/// errors and 2 when the instance is infeasible or exceeds a solver's size guard.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mwc
