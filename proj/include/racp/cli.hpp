#pragma once

#include <string>
#include <vector>

namespace racp::cli {

/// Entry point for the command-line driver; `args` excludes the program
/// name. Returns the process exit code: 0 whenever the requested
/// computation ran to completion (including recorded solver failures such
/// as a singular leading block), nonzero for usage, input or I/O errors.
int run(const std::vector<std::string>& args);

}  // namespace racp::cli
