#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pairnet::cli {

/// Runs one CLI invocation. args excludes the program name. Errors print a
/// single "error: <kind>: <message>" line to err and return nonzero.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pairnet::cli
