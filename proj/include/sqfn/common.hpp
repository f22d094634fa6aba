#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqfn {

using PointView = std::span<const double>;
using Point = std::vector<double>;

/// Raised when an input violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline double sq(double x) { return x * x; }

inline double dist2(PointView a, PointView b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += sq(a[i] - b[i]);
  return s;
}

inline double euclid(PointView a, PointView b) {
  return std::sqrt(dist2(a, b));
}

// Log levels controlled by the SQFN_LOG environment variable: error, info, debug.
enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

inline LogLevel log_level() {
  static LogLevel lvl = [] {
    const char* env = std::getenv("SQFN_LOG");
    if (!env) return LogLevel::Info;
    std::string s(env);
    if (s == "error") return LogLevel::Error;
    if (s == "debug") return LogLevel::Debug;
    return LogLevel::Info;
  }();
  return lvl;
}

inline void log_msg(LogLevel lvl, const std::string& msg) {
  if (static_cast<int>(lvl) <= static_cast<int>(log_level())) {
    const char* tag = lvl == LogLevel::Error ? "error" : (lvl == LogLevel::Info ? "info" : "debug");
    std::fprintf(stderr, "[sqfn %s] %s\n", tag, msg.c_str());
  }
}

// FNV-1a, used for config digests so artifacts can be cross-checked between runs.
inline std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace sqfn
