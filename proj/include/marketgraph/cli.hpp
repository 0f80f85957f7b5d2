#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace marketgraph {

/// The whole command-line frontend, in-process so tests can drive it with
/// string streams. `args` is argv-shaped (program name first). Returns the
/// process exit code: 0 ok, 1 user error (bad arguments, parse, entity,
/// shape, config, unsupported question), 2 system error (io, snapshot,
/// backend). Diagnostics go to `err`, results to `out`, and only `repl`
/// reads from `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace marketgraph
