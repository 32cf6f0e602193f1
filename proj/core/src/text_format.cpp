#include "qportrait/text_format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace qp {

std::string format_real(double x) {
  if (std::abs(x) < 1e-14) return "0";
  char buf[64];
  // %e is locale-independent for the C locale we never change.
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return buf;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

namespace {

template <class T>
bool parse_whole(std::string_view s, T& out) {
  s = trim(s);
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

bool parse_u64(std::string_view s, std::uint64_t& out) { return parse_whole(s, out); }
bool parse_int(std::string_view s, int& out) { return parse_whole(s, out); }
bool parse_real(std::string_view s, double& out) { return parse_whole(s, out); }

}  // namespace qp
