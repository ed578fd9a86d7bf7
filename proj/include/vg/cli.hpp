#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // a bound or verification failed
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vg::cli
