#pragma once

#include <ostream>

namespace elastica::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRunFailure = 1;
inline constexpr int kExitConfig = 2;

// Full command line entry point; argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Text printed by `preset-list`.
const char* preset_listing();

}  // namespace elastica::cli
