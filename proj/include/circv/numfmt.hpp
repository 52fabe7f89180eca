#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace circv {

/// Shortest decimal form that parses back to exactly the same double.
inline std::string format_roundtrip(double v) {
  std::string best;
  char buf[40];
  for (int digits = 1; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    if (std::strtod(buf, nullptr) == v) {
      if (best.empty() || std::string(buf).size() < best.size()) best = buf;
    }
  }
  return best.empty() ? buf : best;
}

}  // namespace circv
