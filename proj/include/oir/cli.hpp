#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oir {

inline constexpr const char* kVersion = "0.1.0";

/// Entry point of the `oir` tool. `args` excludes the program name.
/// Exit codes: 0 success, 1 usage or I/O error, 2 bound violation under
/// --assert-bounds or a failed verify check.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oir
