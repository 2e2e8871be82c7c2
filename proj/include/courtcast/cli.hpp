#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace courtcast::cli {

enum ExitCode : int { ok = 0, usage_error = 1, data_error = 2, internal_error = 3 };

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace courtcast::cli
