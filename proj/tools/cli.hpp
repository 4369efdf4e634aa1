#pragma once

#include <iosfwd>

namespace aca::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1; // a verification or classification invariant failed
inline constexpr int exit_usage = 2;

/// Entry point of the `aca` tool; data goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace aca::cli
