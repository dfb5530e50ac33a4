#pragma once

#include <iosfwd>

namespace gmclust {

enum ExitCode { exit_ok = 0, exit_usage = 1, exit_data = 2, exit_numerical = 3 };

/// Entry point of the `gmclust` command. Results go to files or `out`,
/// diagnostics to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace gmclust
