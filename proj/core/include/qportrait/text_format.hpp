#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace qp {

/// Locale-independent "%.11e" (12 significant digits). Magnitudes below
/// 1e-14 print as "0" so that rounding noise never reaches output files.
std::string format_real(double x);

std::string_view trim(std::string_view s);

/// Whole-string parses; std::nullopt-style failure is reported by `ok`.
bool parse_u64(std::string_view s, std::uint64_t& out);
bool parse_int(std::string_view s, int& out);
bool parse_real(std::string_view s, double& out);

}  // namespace qp
