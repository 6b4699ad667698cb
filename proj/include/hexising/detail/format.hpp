// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <charconv>
#include <cstdlib>
#include <string>
#include <system_error>

#include "hexising/errors.hpp"

namespace hexising::detail {

/// Shortest round-trip decimal form; locale independent, byte deterministic.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& text) {
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ValidationError("bad number: '" + text + "'");
    return v;
}

inline long long parse_ll(const std::string& text) {
    long long v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ValidationError("bad integer: '" + text + "'");
    return v;
}

} // namespace hexising::detail
