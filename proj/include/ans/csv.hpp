#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>

#include "ans/errors.hpp"

namespace ans::csv {

/// 17 significant digits round-trips a double exactly; "%g" never emits
/// locale separators for the C locale, which this program never changes.
inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

inline std::string num(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(v));
    return std::string(buf);
}

inline std::string num(int v) { return std::to_string(v); }

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: fixed '\n' line ends
    if (!out) throw ResourceError("cannot open output file: " + path);
    return out;
}

}  // namespace ans::csv
