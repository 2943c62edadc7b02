#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sepcmc {

/// Command-line front end. `args` excludes the program name. Machine output
/// (CSV or single-line JSON) goes to `out`, diagnostics and usage to `err`.
/// Returns 0 on success, 1 on a failed verification, 2 on a usage error.
///
/// Signed H throughout: with the normal grad F / |grad F| a sphere
/// f + g + h = x^2 + y^2 + z^2 - r^2 has H = -1/r.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sepcmc
