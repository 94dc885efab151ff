#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hapnav {

/// Entry point of the `hapnav` tool: simulate, serve, analyze, calibrate, replay.
/// Failures print "error: <code>: <message>" on `err` and return 2;
/// a replay mismatch returns 1.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hapnav
