// Command-line frontend. Exit codes: 0 success, 1 verification or I/O
// failure, 2 bad flags or arguments outside a command's domain.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hcm {

inline constexpr const char* kVersion = "1.0.0";

std::string version_banner();
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace hcm
