// The `mgw` command line, callable in-process so tests can capture output.
// Exit codes: 0 success, 1 verification failure (a chain check or a
// guaranteed bound failed), 2 usage error (bad flags, bad formula text,
// or an evaluation budget overrun).
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mgw {

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mgw
