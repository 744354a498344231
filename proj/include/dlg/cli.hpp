#pragma once

#include <string>

#include "dlg/model.hpp"

namespace dlg::cli {

/// Parses "dirac", "uniform:sigma=<v>", or "gamma:p=<n>".
/// Throws std::invalid_argument on anything else.
Kernel parse_kernel(const std::string& spec);

/// Full command-line application.  Exit codes: 0 success, 2 configuration
/// error, 3 I/O error, 4 numerical failure.
int run(int argc, const char* const* argv);

}  // namespace dlg::cli
