#pragma once

#include <iosfwd>

namespace koenigs::cli {

constexpr int exit_ok = 0;
constexpr int exit_validation = 2;
constexpr int exit_nonconvergence = 3;

// Full front end: parses argv, dispatches, writes JSON or CSV to `out` (or --out PATH).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace koenigs::cli
