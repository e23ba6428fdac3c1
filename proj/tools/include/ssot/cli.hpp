#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ssot::cli {

/// Runs one command as the `ssot` binary would; returns its exit code.
/// `args` excludes the program name.  All output goes to the given streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ssot::cli
