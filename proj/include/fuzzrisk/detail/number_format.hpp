#pragma once

#include <cassert>
#include <charconv>
#include <string>
#include <system_error>

namespace fuzzrisk::detail {

/// Shortest decimal form that round-trips the double; locale-independent.
inline std::string format_number(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  assert(ec == std::errc());
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace fuzzrisk::detail
