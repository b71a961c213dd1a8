#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace mtum {

// Shortest representation that round-trips through from_chars.
inline std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

}  // namespace mtum
