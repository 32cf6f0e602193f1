#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one verb (portrait, measure, reconstruct, classify, reduction).
/// `args` excludes the program name. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qp::cli
