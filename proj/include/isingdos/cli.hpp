#pragma once

#include <iosfwd>
#include <string_view>

namespace isingdos {

inline constexpr std::string_view kVersion = "0.1.0";

/// Runs the command line. Returns 0 on success, 2 on usage errors and 1 on
/// computation errors; the latter also print {"code": ..., "message": ...}
/// to `err`. "-" or an omitted --out writes to `out`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace isingdos
