#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pseudoform::cli {

inline constexpr int kOk = 0;
inline constexpr int kFalse = 1;
inline constexpr int kBadInput = 2;

/// Runs one command line. `args` excludes the program name. `env_seed` is the
/// value of PSEUDOFORM_SEED, if set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::optional<std::string> env_seed = std::nullopt);

}  // namespace pseudoform::cli
