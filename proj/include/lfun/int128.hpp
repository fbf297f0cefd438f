#pragma once

// Signed 128-bit integers (GCC/Clang extension) with decimal text conversion.

#include <string>
#include <string_view>

#include "lfun/errors.hpp"

namespace lfun {

__extension__ using int128 = __int128;

inline std::string to_string(int128 v) {
    if (v == 0) return "0";
    const bool negative = v < 0;
    std::string digits;
    // work with the negative value so the minimum does not overflow
    int128 x = negative ? v : -v;
    while (x != 0) {
        digits.push_back(static_cast<char>('0' - static_cast<int>(x % 10)));
        x /= 10;
    }
    if (negative) digits.push_back('-');
    return {digits.rbegin(), digits.rend()};
}

/// Parses an optionally signed decimal integer; throws FormatError on junk or overflow.
inline int128 parse_int128(std::string_view text) {
    if (text.empty()) throw FormatError("empty integer literal");
    std::size_t i = 0;
    const bool negative = text[0] == '-';
    if (text[0] == '-' || text[0] == '+') i = 1;
    if (i == text.size()) throw FormatError("sign without digits");
    int128 v = 0;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c < '0' || c > '9') throw FormatError("bad integer literal '" + std::string(text) + "'");
        if (__builtin_mul_overflow(v, 10, &v) ||
            __builtin_sub_overflow(v, static_cast<int128>(c - '0'), &v))
            throw FormatError("integer literal out of 128-bit range");
    }
    if (!negative) {
        if (v == -v && v != 0) throw FormatError("integer literal out of 128-bit range");
        v = -v;
    }
    return v;
}

}  // namespace lfun
