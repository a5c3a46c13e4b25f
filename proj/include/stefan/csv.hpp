#pragma once

#include <charconv>
#include <ostream>
#include <string>
#include <system_error>

namespace stefan {

/// Shortest round-trip decimal form of a double, locale-independent.
inline std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;  // a 32-byte buffer always fits a shortest double
  return std::string(buf, ptr);
}

inline void write_csv_field(std::ostream& out, double value, bool last) {
  out << format_double(value);
  if (!last) out << ',';
}

}  // namespace stefan
