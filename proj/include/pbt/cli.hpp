#pragma once

#include <iosfwd>

namespace pbt::cli {

enum ExitCode : int { exit_ok = 0, exit_verification = 1, exit_usage = 2, exit_io = 3 };

/// Entry point of the `pbt` tool. Tables go to `out` (or --out), diagnostics
/// to `err`. Output depends only on the arguments and PBT_PRECISION_BITS.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pbt::cli
