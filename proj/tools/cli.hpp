#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace switchsim::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Seed used when --seed is absent.
inline constexpr unsigned long long kDefaultSeed = 20190131ULL;

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace switchsim::cli
