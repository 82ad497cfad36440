#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>

namespace skewps {

// Filtration values live in Z together with a +infinity sentinel.
using Value = std::int64_t;
inline constexpr Value kInf = std::numeric_limits<std::int64_t>::max() / 4;

inline bool is_inf(Value v) { return v >= kInf; }

inline Value vadd(Value a, Value b) {
  if (is_inf(a) || is_inf(b)) return kInf;
  return a + b;
}

inline Value vmin(Value a, Value b) { return std::min(a, b); }

inline std::string vstr(Value v) { return is_inf(v) ? std::string("inf") : std::to_string(v); }

}  // namespace skewps
