#pragma once

// billiard_dim front end. Exit codes: 0 success, 1 usage or parse error,
// 2 validation or infeasible request, 3 numerical failure.

#include <iosfwd>

namespace bdim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumerical = 3;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bdim
