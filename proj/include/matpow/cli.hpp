#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace matpow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitStrictFailure = 3;

/// Entry point behind the `matpow` executable. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace matpow::cli
