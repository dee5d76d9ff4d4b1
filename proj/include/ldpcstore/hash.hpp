#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ldpcstore {

// FNV-1a, 64 bit. This hash is normative: host ring positions, chunk
// placement and graph fingerprints all depend on it being bit-identical
// across processes, platforms and releases.
//
//   hash = 14695981039346656037            (offset basis)
//   for each byte b: hash = (hash XOR b) * 1099511628211
//
// Bytes are consumed in order; arithmetic is modulo 2^64.
inline constexpr std::uint64_t kFnvOffsetBasis = 14695981039346656037ull;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ull;

constexpr std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = kFnvOffsetBasis) {
    std::uint64_t h = seed;
    for (unsigned char c : bytes) {
        h ^= static_cast<std::uint64_t>(c);
        h *= kFnvPrime;
    }
    return h;
}

// 16 lowercase hex digits, zero padded (ids, fingerprints, chunk paths).
inline std::string to_hex16(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

inline std::optional<std::uint64_t> parse_hex16(std::string_view s) {
    if (s.size() != 16) return std::nullopt;
    std::uint64_t v = 0;
    for (char c : s) {
        v <<= 4;
        if (c >= '0' && c <= '9')
            v |= static_cast<std::uint64_t>(c - '0');
        else if (c >= 'a' && c <= 'f')
            v |= static_cast<std::uint64_t>(c - 'a' + 10);
        else
            return std::nullopt;
    }
    return v;
}

}  // namespace ldpcstore
