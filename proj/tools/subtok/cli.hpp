#pragma once

#include <iosfwd>

namespace subtok::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Entry point shared by the executable and the tests. Reads SUBTOK_LOG from
// the environment; `in` stands in for stdin when no --input is given.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace subtok::cli
