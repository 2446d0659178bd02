#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace recmean::cli {

/// Runs the command line given as argv-style strings (program name first).
/// Returns the process exit status: 0 on success, 1 on input or I/O errors,
/// CLI11's code on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace recmean::cli
