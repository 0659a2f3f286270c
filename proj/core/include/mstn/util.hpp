#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace mstn {

/// FNV-1a 64-bit hash, used for config hashes and fixture checksums.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string to_hex(std::uint64_t v);

/// Fixed-point rendering, e.g. format_fixed(0.96490001, 4) -> "0.9649".
std::string format_fixed(double v, int decimals);

/// Bit-exact double rendering (hexfloat) and parsing.
std::string format_exact(double v);
double parse_exact(const std::string& s);

std::string lower_snake(std::string_view s);

}  // namespace mstn
