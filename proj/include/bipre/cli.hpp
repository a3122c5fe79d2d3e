#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bipre::cli {

/// Exit statuses.
inline constexpr int kPass = 0;
inline constexpr int kFindings = 1;
inline constexpr int kInputError = 2;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bipre::cli
