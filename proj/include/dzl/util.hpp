#pragma once

#include <charconv>
#include <cstdio>
#include <string>

namespace dzl {

/// Round-trip decimal rendering used for every numeric output column.
inline std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Shortest decimal that reads back to the same double.
inline std::string shortest(double x) {
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647693;

}  // namespace dzl
