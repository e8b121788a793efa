#pragma once

#include <string>

namespace scq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitConstraint = 2;
inline constexpr int kExitUsage = 64;

/// Parses argv, runs one subcommand and maps errors to exit codes.
int dispatch(int argc, const char* const* argv);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace scq::cli
