#pragma once

#include <iosfwd>

namespace ncplush::cli {

/// Exit codes: 0 success / certified_true, 2 certified_false, 1 error
/// (JSON error object on `out`, message on `err`), 64 usage.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFalse = 2;
inline constexpr int kExitUsage = 64;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ncplush::cli
