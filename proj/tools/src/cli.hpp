#pragma once

#include <iosfwd>

namespace laplace_limits::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_data = 3;

//! Entry point of the laplace-limits command. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace laplace_limits::cli
